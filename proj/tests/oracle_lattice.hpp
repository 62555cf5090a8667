#pragma once

// Test-only oracles, kept independent of the library's lattice code paths.
//
// 1) charpoly_pointcount: Whitney numbers via finite-field point counting.
//    #{x in F_p^n avoiding every hyperplane} equals the characteristic
//    polynomial at p whenever reduction mod p preserves the matroid. The
//    fixtures fed to this oracle have all subset-minor prime factors < 11,
//    so any prime >= 11 is safe; an extra-prime consistency check guards the
//    assumption anyway.
//
// 2) mobius_oracle: a from-scratch closure enumeration over all subsets with
//    RREF-based ranks (no BFS, no rank memo, no Bareiss), with the Mobius
//    recursion evaluated straight off the definition.

#include <map>
#include <stdexcept>
#include <vector>

#include "arrcohom/arrangement.hpp"
#include "arrcohom/matq.hpp"
#include "arrcohom/rat.hpp"

namespace oracle {

using arrcohom::Arrangement;
using arrcohom::MatQ;
using arrcohom::Rat;
using arrcohom::VecQ;

inline long long count_complement_points(const Arrangement& arr, long long p) {
    // Reduce normals mod p.
    size_t n = arr.n, d = arr.d();
    std::vector<std::vector<long long>> normals(d, std::vector<long long>(n));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < n; ++j) {
            mpz_class num = arr.hyperplanes[i][j].num();
            mpz_class den = arr.hyperplanes[i][j].den();
            mpz_class pz(static_cast<long>(p)), inv;
            if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t()) == 0)
                throw std::runtime_error("oracle: denominator not invertible mod p");
            mpz_class v = ((num % pz) * inv) % pz;
            long long w = v.get_si();
            normals[i][j] = ((w % p) + p) % p;
        }
    std::vector<long long> x(n, 0);
    long long count = 0;
    for (;;) {
        bool avoids = true;
        for (size_t i = 0; i < d && avoids; ++i) {
            long long s = 0;
            for (size_t j = 0; j < n; ++j) s = (s + normals[i][j] * x[j]) % p;
            if (s % p == 0) avoids = false;
        }
        if (avoids) ++count;
        size_t k = 0;
        while (k < n && ++x[k] == p) x[k++] = 0;
        if (k == n) break;
    }
    return count;
}

/// Whitney numbers h_0..h_n from point counts at primes >= 11, via exact
/// Lagrange interpolation of the characteristic polynomial. chi(t) =
/// sum_i (-1)^i h_i t^{n-i}.
inline std::vector<long long> charpoly_pointcount(const Arrangement& arr) {
    const std::vector<long long> primes = {11, 13, 17, 19, 23, 29, 31};
    size_t n = arr.n;
    size_t need = n + 1;
    if (need + 1 > primes.size()) throw std::runtime_error("oracle: not enough primes");
    std::vector<Rat> xs, ys;
    for (size_t k = 0; k < need; ++k) {
        xs.emplace_back(static_cast<long>(primes[k]));
        ys.emplace_back(static_cast<long>(count_complement_points(arr, primes[k])));
    }
    // Solve the Vandermonde system for coefficients c_0..c_n of chi.
    MatQ V(need, need);
    for (size_t r = 0; r < need; ++r) {
        Rat t(1);
        for (size_t c = 0; c < need; ++c) {
            V(r, c) = t;
            t *= xs[r];
        }
    }
    VecQ coef;
    if (!arrcohom::solve(V, ys, coef))
        throw std::runtime_error("oracle: interpolation failed");
    // Consistency check at an extra prime (guards against a bad prime).
    long long px = primes[need];
    Rat pred;
    Rat t(1);
    for (size_t c = 0; c < need; ++c) {
        pred += coef[c] * t;
        t *= Rat(static_cast<long>(px));
    }
    if (pred != Rat(static_cast<long>(count_complement_points(arr, px))))
        throw std::runtime_error("oracle: extra-prime consistency check failed");
    // h_i = |coefficient of t^{n-i}|.
    std::vector<long long> h(n + 1, 0);
    for (size_t i = 0; i <= n; ++i) {
        Rat c = coef[n - i];
        if (c.den() != 1) throw std::runtime_error("oracle: non-integer coefficient");
        mpz_class v = c.num();
        h[i] = std::llabs(v.get_si());
    }
    return h;
}

struct LatticeOracle {
    std::map<uint32_t, long long> mobius;          // flat mask -> mu
    std::vector<std::vector<uint32_t>> flats_by_rank;
    std::vector<long long> whitney;                // h_0..h_n
};

inline size_t rref_rank(const std::vector<VecQ>& rows) {
    if (rows.empty()) return 0;
    MatQ R;
    return MatQ::from_rows(rows).rref(R).size();
}

inline LatticeOracle mobius_oracle(const Arrangement& arr) {
    size_t d = arr.d();
    auto subset_rank = [&](uint32_t mask) {
        std::vector<VecQ> rows;
        for (size_t e = 0; e < d; ++e)
            if (mask & (uint32_t{1} << e)) rows.push_back(arr.hyperplanes[e]);
        return rref_rank(rows);
    };
    // A set is a flat iff no element outside it keeps the rank unchanged.
    std::map<uint32_t, size_t> flat_rank;
    for (uint32_t mask = 0; mask < (uint32_t{1} << d); ++mask) {
        size_t r = subset_rank(mask);
        bool closed = true;
        for (size_t e = 0; e < d && closed; ++e) {
            uint32_t be = uint32_t{1} << e;
            if (mask & be) continue;
            if (subset_rank(mask | be) == r) closed = false;
        }
        if (closed) flat_rank[mask] = r;
    }
    LatticeOracle out;
    size_t top = 0;
    for (const auto& [f, r] : flat_rank) top = std::max(top, r);
    out.flats_by_rank.assign(top + 1, {});
    for (const auto& [f, r] : flat_rank) out.flats_by_rank[r].push_back(f);
    // Mobius straight from the definition, by increasing rank.
    for (size_t r = 0; r <= top; ++r) {
        for (uint32_t f : out.flats_by_rank[r]) {
            if (r == 0) {
                out.mobius[f] = 1;
                continue;
            }
            long long acc = 0;
            for (const auto& [g, rg] : flat_rank)
                if (g != f && (g & f) == g) acc += out.mobius.at(g);
            out.mobius[f] = -acc;
        }
    }
    out.whitney.assign(arr.n + 1, 0);
    for (const auto& [f, mu] : out.mobius)
        out.whitney[flat_rank.at(f)] += std::llabs(mu);
    return out;
}

}  // namespace oracle
