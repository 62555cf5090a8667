#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <ostream>
#include <string>
#include <vector>

#include "arrcohom/errors.hpp"

namespace arrcohom {

/// Exact rational number. Thin value wrapper over GMP's mpq_class that pins
/// the invariants every caller relies on: always canonical (gcd(num,den)=1,
/// den>0) and equality structural. Serialization is "p/q", or "p" when q=1.
class Rat {
public:
    Rat() : v_(0) {}
    Rat(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
    Rat(long n, long d) : v_(n, d) {
        if (d == 0) throw InputError("Rat: zero denominator");
        v_.canonicalize();
    }
    explicit Rat(const mpq_class& q) : v_(q) {
        if (v_.get_den() == 0) throw InputError("Rat: zero denominator");
        v_.canonicalize();
    }
    explicit Rat(const mpz_class& z) : v_(z) {}

    static Rat parse(const std::string& s) {
        mpq_class q;
        if (q.set_str(s, 10) != 0)
            throw InputError("Rat: cannot parse '" + s + "'");
        if (q.get_den() == 0) throw InputError("Rat: zero denominator in '" + s + "'");
        q.canonicalize();
        return Rat(q);
    }

    const mpq_class& value() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }

    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.is_zero()) throw InputError("Rat: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rat operator+(Rat a, const Rat& b) { a += b; return a; }
    friend Rat operator-(Rat a, const Rat& b) { a -= b; return a; }
    friend Rat operator*(Rat a, const Rat& b) { a *= b; return a; }
    friend Rat operator/(Rat a, const Rat& b) { a /= b; return a; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

    Rat abs() const { return Rat(mpq_class(::abs(v_))); }

    std::string str() const { return v_.get_str(); }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r) {
        return os << r.v_;
    }

private:
    mpq_class v_;
};

using VecQ = std::vector<Rat>;

inline Rat dot(const VecQ& a, const VecQ& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot: length mismatch");
    Rat s;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline bool is_zero_vec(const VecQ& v) {
    for (const Rat& x : v)
        if (!x.is_zero()) return false;
    return true;
}

/// Exact binomial coefficient; zero for k < 0 or k > n.
inline mpz_class binom(long n, long k) {
    if (k < 0 || k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
    return r;
}

}  // namespace arrcohom
