#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "arrcohom/arrangement.hpp"
#include "arrcohom/errors.hpp"
#include "arrcohom/matq.hpp"

namespace arrcohom {

using Mask = uint32_t;

inline int popcount(Mask m) { return __builtin_popcount(m); }

inline std::vector<size_t> mask_to_set(Mask m) {
    std::vector<size_t> s;
    for (size_t i = 0; m; ++i, m >>= 1)
        if (m & 1) s.push_back(i);
    return s;
}

inline Mask set_to_mask(const std::vector<size_t>& s) {
    Mask m = 0;
    for (size_t e : s) m |= Mask{1} << e;
    return m;
}

/// Lexicographic order on the sorted element tuples (not on mask values).
inline bool subset_lex_less(Mask a, Mask b) {
    std::vector<size_t> sa = mask_to_set(a), sb = mask_to_set(b);
    return sa < sb;
}

/// Intersection-lattice data of an arrangement: rank oracle, flats stratified
/// by rank with Mobius values, circuits, and the no-broken-circuit sets taken
/// with respect to the input hyperplane order.
class MatroidData {
public:
    explicit MatroidData(const Arrangement& arr) : arr_(arr) {
        d_ = arr.d();
        if (d_ > 24) throw InputError("matroid: more than 24 hyperplanes is out of scope");
        rank_memo_.assign(size_t{1} << d_, -1);
        full_rank_ = rank_of(all_mask());
        build_flats();
        build_mobius();
        build_circuits();
        build_nbc();
        check_consistency();
    }

    size_t d() const { return d_; }
    size_t rank() const { return full_rank_; }
    Mask all_mask() const { return (Mask{1} << d_) - 1; }

    /// Matroid rank of a set of hyperplanes = rank of their normal matrix.
    size_t rank_of(Mask s) const {
        int8_t& memo = rank_memo_[s];
        if (memo >= 0) return static_cast<size_t>(memo);
        std::vector<VecQ> rows;
        for (size_t e : mask_to_set(s)) rows.push_back(arr_.hyperplanes[e]);
        size_t r = rows.empty() ? 0 : MatQ::from_rows(rows).rank();
        memo = static_cast<int8_t>(r);
        return r;
    }

    bool independent(Mask s) const {
        return rank_of(s) == static_cast<size_t>(popcount(s));
    }

    Mask closure(Mask s) const {
        size_t r = rank_of(s);
        Mask c = s;
        for (size_t e = 0; e < d_; ++e) {
            Mask be = Mask{1} << e;
            if (c & be) continue;
            if (rank_of(s | be) == r) c |= be;
        }
        return c;
    }

    /// Flats of a given rank, each sorted lexicographically.
    const std::vector<Mask>& flats(size_t rk) const { return flats_[rk]; }
    size_t flat_count() const {
        size_t c = 0;
        for (const auto& level : flats_) c += level.size();
        return c;
    }

    long long mobius(Mask flat) const {
        auto it = mobius_.find(flat);
        if (it == mobius_.end()) throw InternalError("mobius: not a flat");
        return it->second;
    }

    const std::vector<Mask>& circuits() const { return circuits_; }
    const std::vector<Mask>& broken_circuits() const { return broken_circuits_; }

    bool contains_broken_circuit(Mask s) const {
        for (Mask bc : broken_circuits_)
            if ((s & bc) == bc) return true;
        return false;
    }

    bool is_nbc(Mask s) const {
        return independent(s) && !contains_broken_circuit(s);
    }

    /// NBC sets of each cardinality, lex-sorted. nbc(i).size() == h_i.
    const std::vector<Mask>& nbc(size_t degree) const { return nbc_[degree]; }

    /// Whitney numbers h_0..h_n (unsigned): h_i = sum of |mu| over rank-i flats.
    std::vector<long long> whitney() const {
        std::vector<long long> h(arr_.n + 1, 0);
        for (size_t rk = 0; rk < flats_.size(); ++rk)
            for (Mask f : flats_[rk]) h[rk] += std::abs(mobius(f));
        return h;
    }

private:
    void build_flats() {
        flats_.assign(full_rank_ + 1, {});
        std::set<Mask> seen;
        Mask bottom = closure(0);
        if (bottom != 0)
            throw InternalError("matroid: loop detected (zero normal escaped validation)");
        flats_[0].push_back(bottom);
        seen.insert(bottom);
        std::vector<Mask> frontier = {bottom};
        for (size_t rk = 0; rk < full_rank_; ++rk) {
            std::vector<Mask> next;
            for (Mask f : frontier) {
                for (size_t e = 0; e < d_; ++e) {
                    Mask be = Mask{1} << e;
                    if (f & be) continue;
                    Mask c = closure(f | be);
                    if (seen.insert(c).second) {
                        if (rank_of(c) != rk + 1)
                            throw InternalError("matroid: closure rank jump");
                        next.push_back(c);
                    }
                }
            }
            std::sort(next.begin(), next.end(), subset_lex_less);
            flats_[rk + 1] = next;
            frontier = std::move(next);
        }
    }

    void build_mobius() {
        // mu(bottom) = 1; mu(X) = -sum over flats strictly below X.
        mobius_[flats_[0][0]] = 1;
        for (size_t rk = 1; rk <= full_rank_; ++rk) {
            for (Mask f : flats_[rk]) {
                long long acc = 0;
                for (size_t lower = 0; lower < rk; ++lower)
                    for (Mask g : flats_[lower])
                        if ((g & f) == g) acc += mobius_.at(g);
                mobius_[f] = -acc;
            }
        }
    }

    void build_circuits() {
        // Circuits have at most rank+1 elements.
        for (Mask s = 1; s <= all_mask(); ++s) {
            size_t k = static_cast<size_t>(popcount(s));
            if (k < 2 || k > full_rank_ + 1) continue;
            if (rank_of(s) != k - 1) continue;
            bool minimal = true;
            for (size_t e : mask_to_set(s)) {
                Mask t = s & ~(Mask{1} << e);
                if (rank_of(t) != k - 1) { minimal = false; break; }
            }
            if (minimal) circuits_.push_back(s);
        }
        std::sort(circuits_.begin(), circuits_.end(), subset_lex_less);
        for (Mask c : circuits_) {
            size_t min_e = mask_to_set(c).front();
            broken_circuits_.push_back(c & ~(Mask{1} << min_e));
        }
    }

    void build_nbc() {
        nbc_.assign(full_rank_ + 1, {});
        for (Mask s = 0; s <= all_mask(); ++s) {
            size_t k = static_cast<size_t>(popcount(s));
            if (k > full_rank_) continue;
            if (!independent(s)) continue;
            if (contains_broken_circuit(s)) continue;
            nbc_[k].push_back(s);
        }
        for (auto& level : nbc_)
            std::sort(level.begin(), level.end(), subset_lex_less);
    }

    void check_consistency() {
        // |NBC_i| must equal h_i, and mu must alternate in sign with rank.
        std::vector<long long> h = whitney();
        for (size_t i = 0; i <= full_rank_; ++i) {
            if (static_cast<long long>(nbc_[i].size()) != h[i])
                throw InternalError("matroid: NBC count disagrees with Mobius sum at degree " +
                                    std::to_string(i));
        }
        long long total = 0;
        for (const auto& [f, mu] : mobius_) {
            size_t rk = rank_of(f);
            if (mu == 0 || (mu > 0) != (rk % 2 == 0))
                throw InternalError("matroid: Mobius sign violation");
            total += mu;
        }
        if (full_rank_ >= 1 && total != 0)
            throw InternalError("matroid: Mobius values do not sum to zero");
    }

    const Arrangement arr_;
    size_t d_ = 0;
    size_t full_rank_ = 0;
    mutable std::vector<int8_t> rank_memo_;
    std::vector<std::vector<Mask>> flats_;
    std::map<Mask, long long> mobius_;
    std::vector<Mask> circuits_;
    std::vector<Mask> broken_circuits_;
    std::vector<std::vector<Mask>> nbc_;
};

/// Whitney numbers and their two alternating-sum refinements. Defined for
/// central essential arrangements; validated against the NBC counts.
struct BettiTable {
    std::vector<long long> h;     // h_0..h_n
    std::vector<long long> b;     // b_0..b_{n-1}
    std::vector<long long> beta;  // beta_0..beta_{n-1}

    long long b_at(long i) const {
        if (i < 0 || i >= static_cast<long>(b.size())) return 0;
        return b[static_cast<size_t>(i)];
    }
    long long beta_at(long i) const {
        if (i < 0 || i >= static_cast<long>(beta.size())) return 0;
        return beta[static_cast<size_t>(i)];
    }
};

inline BettiTable betti(const Arrangement& arr, const MatroidData& m) {
    if (m.rank() != arr.n)
        throw InputError("betti: arrangement is not essential (rank " +
                         std::to_string(m.rank()) + " < n = " + std::to_string(arr.n) + ")");
    size_t n = arr.n;
    BettiTable t;
    t.h = m.whitney();
    t.b.assign(n, 0);
    t.beta.assign(n, 0);
    for (size_t i = 0; i < n; ++i) {
        long long acc = 0;
        for (size_t k = 0; k <= i; ++k)
            acc += ((i - k) % 2 == 0 ? 1 : -1) * t.h[k];
        t.b[i] = acc;
    }
    for (size_t i = 0; i < n; ++i) {
        long long acc = 0;
        for (size_t k = 0; k <= i; ++k)
            acc += ((i - k) % 2 == 0 ? 1 : -1) * t.b[k];
        t.beta[i] = acc;
    }
    // Structural identities; failures indicate a lattice bug, not bad input.
    if (t.h[0] != 1 || t.b[0] != 1 || t.beta[0] != 1)
        throw InternalError("betti: degree-0 entry is not 1");
    for (size_t i = 0; i <= n; ++i) {
        long long bi = (i < n) ? t.b[i] : 0;
        long long bim1 = (i >= 1) ? t.b[i - 1] : 0;
        if (t.h[i] != bi + bim1)
            throw InternalError("betti: h != b_i + b_{i-1} at i = " + std::to_string(i));
        if (i < n) {
            long long betam1 = (i >= 1) ? t.beta[i - 1] : 0;
            if (t.b[i] != t.beta[i] + betam1)
                throw InternalError("betti: b != beta_i + beta_{i-1} at i = " + std::to_string(i));
            if (t.b[i] < 0 || t.beta[i] < 0)
                throw InternalError("betti: negative entry at i = " + std::to_string(i));
        }
    }
    return t;
}

/// Crapo criterion with an independent matroid-connectivity cross-check: a
/// coordinate split into two mutually independent groups exists iff some
/// bipartition has rank(S) + rank(S^c) == rank. The two answers must agree.
inline bool is_indecomposable(const Arrangement& arr, const MatroidData& m,
                              const BettiTable& t) {
    bool crapo = t.beta[arr.n - 1] > 0;
    bool split_found = false;
    Mask all = m.all_mask();
    if (arr.d() >= 2) {
        // Fix hyperplane 0 on one side to halve the enumeration.
        for (Mask s = 1; s < all; s += 2) {
            Mask comp = all & ~s;
            if (comp == 0) continue;
            if (m.rank_of(s) + m.rank_of(comp) == m.rank()) {
                split_found = true;
                break;
            }
        }
    }
    if (crapo == split_found)
        throw InternalError("is_indecomposable: Crapo invariant and matroid "
                            "connectivity disagree");
    return crapo;
}

struct RestrictionOptions {
    int retries = 10;
    int64_t entry_bound = 1000;
};

/// Intersect with a seeded pseudo-random rational subspace of dimension s+1.
/// Genericity is certified operationally: the restricted matroid must be the
/// rank-(s+1) truncation of the original (checked on every subset), which
/// forces b_i to agree for i <= s. Retries with fresh randomness, then
/// throws GenericityFailure.
inline Arrangement restrict_generic(const Arrangement& arr, const MatroidData& m,
                                    size_t s, uint64_t seed,
                                    const RestrictionOptions& opt = {}) {
    if (s < 1 || s + 1 > arr.n)
        throw InputError("restrict_generic: need 1 <= s <= n-1");
    Rng rng(seed ^ 0xc0ffee11ULL);
    size_t target = s + 1;
    for (int attempt = 0; attempt < opt.retries; ++attempt) {
        // Column basis of the subspace.
        MatQ B(arr.n, target);
        for (size_t i = 0; i < arr.n; ++i)
            for (size_t j = 0; j < target; ++j)
                B(i, j) = Rat(mpz_class(rng.next_in(-opt.entry_bound, opt.entry_bound)));
        if (B.rank() != target) continue;
        std::vector<VecQ> restricted;
        bool ok = true;
        for (const VecQ& h : arr.hyperplanes) {
            VecQ v(target);
            for (size_t j = 0; j < target; ++j) {
                Rat acc;
                for (size_t i = 0; i < arr.n; ++i) acc += B(i, j) * h[i];
                v[j] = acc;
            }
            if (is_zero_vec(v)) { ok = false; break; }
            restricted.push_back(std::move(v));
        }
        if (!ok) continue;
        Arrangement out;
        try {
            out = make_arrangement(arr.name + "|S(s=" + std::to_string(s) + ")",
                                   target, restricted);
        } catch (const InputError&) {
            continue;
        }
        if (out.d() != arr.d()) continue;  // proportional collapse = not generic
        // Certify: restricted ranks equal truncated ranks on every subset.
        bool generic = true;
        for (Mask sub = 0; sub <= m.all_mask() && generic; ++sub) {
            std::vector<VecQ> rows;
            for (size_t e : mask_to_set(sub)) rows.push_back(out.hyperplanes[e]);
            size_t rr = rows.empty() ? 0 : MatQ::from_rows(rows).rank();
            if (rr != std::min(m.rank_of(sub), target)) generic = false;
        }
        if (generic) return out;
    }
    throw GenericityFailure("restrict_generic: no generic subspace found within retry budget");
}

}  // namespace arrcohom
