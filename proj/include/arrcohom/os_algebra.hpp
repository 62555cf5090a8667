#pragma once

#include <map>
#include <vector>

#include "arrcohom/matroid.hpp"

namespace arrcohom {

/// Sparse element of the graded algebra in NBC coordinates: monomial mask ->
/// coefficient. All masks in one element have equal popcount.
using SparseElem = std::map<Mask, Rat>;

/// The central Orlik-Solomon algebra in its no-broken-circuit basis.
///
/// Monomials e_S are indexed by subsets S (masks) with S written in
/// increasing label order. The straightening rewriter expresses any e_S in
/// the NBC basis by repeatedly replacing the graded-lex-largest broken
/// circuit inside S via its circuit relation; each rewrite swaps an element
/// for a strictly smaller one, so the recursion terminates, and results are
/// memoized per subset.
class OSAlgebra {
public:
    explicit OSAlgebra(const MatroidData& m) : m_(m) {
        // Positions of NBC monomials per degree, for dense coordinates.
        nbc_pos_.resize(m_.rank() + 1);
        for (size_t k = 0; k <= m_.rank(); ++k) {
            const auto& level = m_.nbc(k);
            for (size_t p = 0; p < level.size(); ++p) nbc_pos_[k][level[p]] = p;
        }
    }

    const MatroidData& matroid() const { return m_; }
    size_t dim(size_t degree) const { return m_.nbc(degree).size(); }

    size_t nbc_index(size_t degree, Mask s) const { return nbc_pos_[degree].at(s); }

    /// e_S in NBC coordinates (sparse). Dependent S maps to zero.
    const SparseElem& straighten(Mask s) const {
        auto it = memo_.find(s);
        if (it != memo_.end()) return it->second;
        SparseElem out;
        if (!m_.independent(s)) {
            // e_S = 0 for dependent S.
        } else if (!m_.contains_broken_circuit(s)) {
            out[s] = Rat(1);
        } else {
            Mask bc = largest_broken_circuit_in(s);
            Mask circuit = circuit_of_broken(bc);
            std::vector<size_t> c = mask_to_set(circuit);   // c[0] = min
            Mask t_mask = s & ~bc;
            int eps = merge_sign(bc, t_mask);
            for (size_t j = 1; j < c.size(); ++j) {
                Mask bj = circuit & ~(Mask{1} << c[j]);     // contains c[0]
                if (bj & t_mask) continue;                  // repeated factor
                int rel_sign = (j % 2 == 1) ? 1 : -1;       // (-1)^{j+1} for 0-based j
                int sigma = merge_sign(bj, t_mask);
                Rat coef = Rat(eps * rel_sign * sigma);
                for (const auto& [mono, c2] : straighten(bj | t_mask)) {
                    Rat& slot = out[mono];
                    slot += coef * c2;
                    if (slot.is_zero()) out.erase(mono);
                }
            }
        }
        return memo_.emplace(s, std::move(out)).first->second;
    }

    /// Left wedge by the generator e_k (0-based k), degree |S| -> |S|+1.
    SparseElem wedge_gen(size_t k, Mask s) const {
        SparseElem out;
        Mask bk = Mask{1} << k;
        if (s & bk) return out;
        int below = popcount(s & (bk - 1));
        int sign = (below % 2 == 0) ? 1 : -1;
        for (const auto& [mono, c] : straighten(s | bk)) {
            out[mono] = Rat(sign) * c;
        }
        return out;
    }

    /// Left wedge by e_k of a general sparse element.
    SparseElem wedge_gen_elem(size_t k, const SparseElem& w) const {
        SparseElem out;
        for (const auto& [mono, c] : w) {
            for (const auto& [m2, c2] : wedge_gen(k, mono)) {
                Rat& slot = out[m2];
                slot += c * c2;
                if (slot.is_zero()) out.erase(m2);
            }
        }
        return out;
    }

    VecQ to_dense(size_t degree, const SparseElem& e) const {
        VecQ v(dim(degree));
        for (const auto& [mono, c] : e) v[nbc_index(degree, mono)] = c;
        return v;
    }

    /// Matrix of the degree-lowering derivation (de_k = 1) from degree i to
    /// degree i-1 in NBC coordinates. Faces of NBC sets are NBC, so no
    /// straightening is needed here.
    MatQ boundary_matrix(size_t i) const {
        if (i == 0) return MatQ(0, dim(0));
        MatQ D(dim(i - 1), dim(i));
        const auto& level = m_.nbc(i);
        for (size_t col = 0; col < level.size(); ++col) {
            std::vector<size_t> elems = mask_to_set(level[col]);
            for (size_t j = 0; j < elems.size(); ++j) {
                Mask face = level[col] & ~(Mask{1} << elems[j]);
                size_t row = nbc_index(i - 1, face);
                D(row, col) += Rat(j % 2 == 0 ? 1 : -1);
            }
        }
        return D;
    }

private:
    /// Sign of the shuffle sorting (sorted A, sorted B) into sorted(A|B):
    /// (-1)^{#inversions between the blocks}.
    static int merge_sign(Mask a, Mask b) {
        std::vector<size_t> ea = mask_to_set(a), eb = mask_to_set(b);
        size_t inversions = 0;
        for (size_t x : ea)
            for (size_t y : eb)
                if (x > y) ++inversions;
        return inversions % 2 == 0 ? 1 : -1;
    }

    Mask largest_broken_circuit_in(Mask s) const {
        Mask best = 0;
        bool found = false;
        for (Mask bc : m_.broken_circuits()) {
            if ((s & bc) != bc) continue;
            if (!found || grlex_subset_less(best, bc)) {
                best = bc;
                found = true;
            }
        }
        if (!found) throw InternalError("straighten: no broken circuit in rewrite step");
        return best;
    }

    static bool grlex_subset_less(Mask a, Mask b) {
        int pa = popcount(a), pb = popcount(b);
        if (pa != pb) return pa < pb;
        return subset_lex_less(a, b);
    }

    Mask circuit_of_broken(Mask bc) const {
        for (size_t idx = 0; idx < m_.broken_circuits().size(); ++idx)
            if (m_.broken_circuits()[idx] == bc) return m_.circuits()[idx];
        throw InternalError("straighten: broken circuit without its circuit");
    }

    MatroidData m_;
    std::vector<std::map<Mask, size_t>> nbc_pos_;
    mutable std::map<Mask, SparseElem> memo_;
};

}  // namespace arrcohom
