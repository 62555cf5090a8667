#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "arrcohom/errors.hpp"
#include "arrcohom/rat.hpp"

namespace arrcohom {

using Exponents = std::vector<uint32_t>;

/// Graded-lexicographic order on exponent vectors: compare total degree
/// first, ties broken lexicographically. This is the canonical term order of
/// the whole project; every serialized polynomial lists terms in descending
/// grlex order, so reports are byte-reproducible.
struct GrlexLess {
    bool operator()(const Exponents& a, const Exponents& b) const {
        uint64_t da = std::accumulate(a.begin(), a.end(), uint64_t{0});
        uint64_t db = std::accumulate(b.begin(), b.end(), uint64_t{0});
        if (da != db) return da < db;
        for (size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }
};

/// Sparse multivariate polynomial over Rat with a fixed variable count.
/// No zero coefficients are ever stored; the term map keeps canonical order.
class MPoly {
public:
    MPoly() : nvars_(0) {}
    explicit MPoly(size_t nvars) : nvars_(nvars) {}

    static MPoly zero(size_t nvars) { return MPoly(nvars); }

    static MPoly constant(size_t nvars, const Rat& c) {
        MPoly p(nvars);
        if (!c.is_zero()) p.terms_[Exponents(nvars, 0)] = c;
        return p;
    }

    /// The variable x_{idx+1} (0-based index).
    static MPoly var(size_t nvars, size_t idx, const Rat& coef = Rat(1)) {
        if (idx >= nvars) throw DimensionMismatch("MPoly::var: index out of range");
        MPoly p(nvars);
        if (!coef.is_zero()) {
            Exponents e(nvars, 0);
            e[idx] = 1;
            p.terms_[e] = coef;
        }
        return p;
    }

    /// Homogeneous linear form sum_k coefs[k] * x_{k+1}.
    static MPoly linear_form(const VecQ& coefs) {
        MPoly p(coefs.size());
        for (size_t k = 0; k < coefs.size(); ++k) {
            if (coefs[k].is_zero()) continue;
            Exponents e(coefs.size(), 0);
            e[k] = 1;
            p.terms_[e] = coefs[k];
        }
        return p;
    }

    size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const std::map<Exponents, Rat, GrlexLess>& terms() const { return terms_; }

    /// Max total degree of stored terms; -1 for the zero polynomial.
    long degree() const {
        if (terms_.empty()) return -1;
        const Exponents& lead = terms_.rbegin()->first;
        return static_cast<long>(
            std::accumulate(lead.begin(), lead.end(), uint64_t{0}));
    }

    bool is_homogeneous(long deg) const {
        for (const auto& [e, c] : terms_) {
            long d = static_cast<long>(
                std::accumulate(e.begin(), e.end(), uint64_t{0}));
            if (d != deg) return false;
        }
        return true;
    }

    void add_term(const Exponents& e, const Rat& c) {
        if (e.size() != nvars_) throw DimensionMismatch("MPoly::add_term: arity");
        if (c.is_zero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    MPoly operator-() const {
        MPoly r(nvars_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    MPoly& operator+=(const MPoly& o) {
        check_arity(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    MPoly& operator-=(const MPoly& o) {
        check_arity(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    friend MPoly operator+(MPoly a, const MPoly& b) { a += b; return a; }
    friend MPoly operator-(MPoly a, const MPoly& b) { a -= b; return a; }

    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        a.check_arity(b);
        MPoly r(a.nvars_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e(a.nvars_);
                for (size_t i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }

    MPoly& operator*=(const MPoly& o) { *this = *this * o; return *this; }

    friend MPoly operator*(const MPoly& a, const Rat& c) {
        MPoly r(a.nvars_);
        if (c.is_zero()) return r;
        for (const auto& [e, coef] : a.terms_) r.terms_.emplace(e, coef * c);
        return r;
    }
    friend MPoly operator*(const Rat& c, const MPoly& a) { return a * c; }

    friend bool operator==(const MPoly& a, const MPoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

    /// Exact evaluation at a rational point.
    Rat eval(const VecQ& point) const {
        if (point.size() != nvars_)
            throw DimensionMismatch("MPoly::eval: point length != variable count");
        Rat total;
        for (const auto& [e, c] : terms_) {
            Rat t = c;
            for (size_t i = 0; i < nvars_; ++i) {
                for (uint32_t k = 0; k < e[i]; ++k) t *= point[i];
            }
            total += t;
        }
        return total;
    }

    /// Substitute each variable with a polynomial (possibly in another ring).
    MPoly subst(const std::vector<MPoly>& images, size_t out_nvars) const {
        MPoly r(out_nvars);
        if (images.size() != nvars_)
            throw DimensionMismatch("MPoly::subst: image count");
        for (const auto& [e, c] : terms_) {
            MPoly t = MPoly::constant(out_nvars, c);
            for (size_t i = 0; i < nvars_; ++i)
                for (uint32_t k = 0; k < e[i]; ++k) t *= images[i];
            r += t;
        }
        return r;
    }

    const Exponents& leading_exponents() const {
        if (terms_.empty()) throw InternalError("MPoly: leading term of zero");
        return terms_.rbegin()->first;
    }
    const Rat& leading_coef() const {
        if (terms_.empty()) throw InternalError("MPoly: leading coef of zero");
        return terms_.rbegin()->second;
    }

    /// Exact division: returns r with q*r == *this, else throws NotDivisible.
    /// Standard leading-term reduction; for divisible inputs each step is
    /// forced because grlex leading terms are multiplicative.
    MPoly divide_exact(const MPoly& q) const {
        check_arity(q);
        if (q.is_zero()) throw InputError("divide_exact: division by zero polynomial");
        MPoly rem = *this;
        MPoly quot(nvars_);
        const Exponents& qe = q.leading_exponents();
        const Rat& qc = q.leading_coef();
        while (!rem.is_zero()) {
            const Exponents& re = rem.leading_exponents();
            Exponents diff(nvars_);
            for (size_t i = 0; i < nvars_; ++i) {
                if (re[i] < qe[i]) throw NotDivisible("divide_exact: remainder nonzero");
                diff[i] = re[i] - qe[i];
            }
            Rat c = rem.leading_coef() / qc;
            MPoly t(nvars_);
            t.terms_.emplace(diff, c);
            quot += t;
            rem -= t * q;
        }
        return quot;
    }

    /// Canonical text form, terms in descending grlex order: "x_1^2*x_2 - 3/2".
    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            Rat a = c;
            if (first) {
                if (a.sign() < 0) { os << "-"; a = -a; }
            } else {
                os << (a.sign() < 0 ? " - " : " + ");
                if (a.sign() < 0) a = -a;
            }
            first = false;
            bool has_var = false;
            std::ostringstream vars;
            bool first_var = true;
            for (size_t i = 0; i < nvars_; ++i) {
                if (e[i] == 0) continue;
                if (!first_var) vars << "*";
                vars << "x_" << (i + 1);
                if (e[i] > 1) vars << "^" << e[i];
                has_var = true;
                first_var = false;
            }
            if (!has_var) {
                os << a.str();
            } else if (a == Rat(1)) {
                os << vars.str();
            } else {
                os << a.str() << "*" << vars.str();
            }
        }
        return os.str();
    }

private:
    void check_arity(const MPoly& o) const {
        if (nvars_ != o.nvars_)
            throw DimensionMismatch("MPoly: variable count mismatch");
    }

    size_t nvars_;
    std::map<Exponents, Rat, GrlexLess> terms_;
};

}  // namespace arrcohom
