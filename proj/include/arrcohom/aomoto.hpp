#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "arrcohom/matpoly.hpp"
#include "arrcohom/matroid.hpp"
#include "arrcohom/os_algebra.hpp"
#include "arrcohom/rng.hpp"

namespace arrcohom {

/// Graded bases of the projective cohomology model: H^i realized as the
/// kernel of the degree-lowering derivation inside the OS algebra (a genuine
/// subalgebra, since the derivation obeys the Leibniz rule). Degree one
/// carries the distinguished basis {e_k - e_d : k = 1..d-1}; the dual
/// coordinates x_k of that basis are the variables of every linear-form
/// matrix downstream.
class ProjectiveModel {
public:
    ProjectiveModel(const Arrangement& arr, const MatroidData& m,
                    const BettiTable& t)
        : arr_(arr), os_(m), betti_(t) {
        size_t n = arr.n;
        basis_.resize(n);
        for (size_t i = 0; i < n; ++i) {
            if (i == 0) {
                basis_[0] = MatQ(os_.dim(0), 1);
                basis_[0](0, 0) = Rat(1);
            } else if (i == 1) {
                size_t d = arr.d();
                basis_[1] = MatQ(os_.dim(1), d - 1);
                for (size_t k = 0; k + 1 < d; ++k) {
                    basis_[1](os_.nbc_index(1, Mask{1} << k), k) = Rat(1);
                    basis_[1](os_.nbc_index(1, Mask{1} << (d - 1)), k) = Rat(-1);
                }
            } else {
                auto [rank, null_basis] = rank_and_nullspace(os_.boundary_matrix(i));
                basis_[i] = from_cols(null_basis);
            }
            long long want = betti_.b_at(static_cast<long>(i));
            if (static_cast<long long>(basis_[i].cols()) != want)
                throw DimensionMismatch(
                    "projective_basis: kernel dimension " + std::to_string(basis_[i].cols()) +
                    " != b_" + std::to_string(i) + " = " + std::to_string(want));
            if (i >= 2 && !(os_.boundary_matrix(i) * basis_[i]).is_zero())
                throw InternalError("projective_basis: basis not annihilated");
        }
        // Precompute coordinatization: an invertible row-selection of each
        // basis matrix, so expressing kernel vectors in H^i coordinates is a
        // small matrix product instead of a fresh elimination.
        pivot_rows_.resize(n);
        inv_.resize(n);
        for (size_t i = 0; i < n; ++i) {
            MatQ R;
            std::vector<size_t> prows = basis_[i].transpose().rref(R);
            if (prows.size() != basis_[i].cols())
                throw InternalError("projective_basis: basis matrix rank-deficient");
            std::vector<size_t> all_cols(basis_[i].cols());
            for (size_t c = 0; c < all_cols.size(); ++c) all_cols[c] = c;
            pivot_rows_[i] = prows;
            inv_[i] = invert(basis_[i].submatrix(prows, all_cols));
        }
    }

    const Arrangement& arrangement() const { return arr_; }
    const OSAlgebra& algebra() const { return os_; }
    const BettiTable& betti() const { return betti_; }

    /// Basis of H^i as columns (in NBC coordinates of degree i).
    const MatQ& projective_basis(size_t i) const {
        if (i >= basis_.size()) throw InputError("projective_basis: degree out of range");
        return basis_[i];
    }

    size_t h1_dim() const { return basis_[1].cols(); }

    /// Coordinates of an ambient degree-i vector known to lie in H^i.
    VecQ coordinatize(size_t i, const VecQ& ambient) const {
        VecQ restricted(pivot_rows_[i].size());
        for (size_t k = 0; k < restricted.size(); ++k)
            restricted[k] = ambient[pivot_rows_[i][k]];
        VecQ c = inv_[i] * restricted;
        if (!(basis_[i] * c == ambient))
            throw InternalError("coordinatize: vector not in the projective model");
        return c;
    }

    /// Matrix of w -> (e_k - e_d) ^ w from H^i to H^{i+1} (k is 1-based).
    MatQ left_mult(size_t k, size_t i) const {
        if (k < 1 || k > h1_dim()) throw InputError("left_mult: k out of range");
        if (i + 1 >= basis_.size()) throw InputError("left_mult: degree out of range");
        const MatQ& B = basis_[i];
        size_t d = arr_.d();
        MatQ out(basis_[i + 1].cols(), B.cols());
        for (size_t col = 0; col < B.cols(); ++col) {
            SparseElem w;
            const auto& level = os_.matroid().nbc(i);
            for (size_t r = 0; r < B.rows(); ++r)
                if (!B(r, col).is_zero()) w[level[r]] = B(r, col);
            SparseElem u = os_.wedge_gen_elem(k - 1, w);
            for (const auto& [mono, c] : os_.wedge_gen_elem(d - 1, w)) {
                Rat& slot = u[mono];
                slot -= c;
                if (slot.is_zero()) u.erase(mono);
            }
            VecQ coords = coordinatize(i + 1, os_.to_dense(i + 1, u));
            for (size_t r = 0; r < out.rows(); ++r) out(r, col) = coords[r];
        }
        return out;
    }

    /// Cup product with a degree-one class given in the distinguished
    /// coordinates: w -> (sum_k v_k (e_k - e_d)) ^ w, degree i -> i+1.
    VecQ cup_with(const VecQ& v, size_t i, const VecQ& w_coords) const {
        if (v.size() != h1_dim()) throw DimensionMismatch("cup_with: v length");
        const MatQ& B = basis_[i];
        SparseElem w;
        const auto& level = os_.matroid().nbc(i);
        VecQ ambient = B * w_coords;
        for (size_t r = 0; r < ambient.size(); ++r)
            if (!ambient[r].is_zero()) w[level[r]] = ambient[r];
        SparseElem acc;
        size_t d = arr_.d();
        for (size_t k = 0; k < v.size(); ++k) {
            if (v[k].is_zero()) continue;
            for (const auto& [mono, c] : os_.wedge_gen_elem(k, w)) {
                Rat& slot = acc[mono];
                slot += v[k] * c;
                if (slot.is_zero()) acc.erase(mono);
            }
        }
        // The e_d component: -(sum_k v_k) e_d ^ w.
        Rat vsum;
        for (const Rat& x : v) vsum += x;
        if (!vsum.is_zero()) {
            for (const auto& [mono, c] : os_.wedge_gen_elem(d - 1, w)) {
                Rat& slot = acc[mono];
                slot -= vsum * c;
                if (slot.is_zero()) acc.erase(mono);
            }
        }
        return coordinatize(i + 1, os_.to_dense(i + 1, acc));
    }

private:
    Arrangement arr_;
    OSAlgebra os_;
    BettiTable betti_;
    std::vector<MatQ> basis_;
    std::vector<std::vector<size_t>> pivot_rows_;
    std::vector<MatQ> inv_;
};

/// The complex of linear-form matrices: phi_i has shape b_{i+1} x b_i in the
/// variables x_1..x_{b_1}, entries sum_k x_k * left_mult(k, i).
struct AomotoComplex {
    std::vector<MatPoly> phi;       // phi_0 .. phi_{n-2}
    BettiTable betti;
    size_t nvars = 0;
    size_t n = 0;                   // ambient (essential) dimension

    const MatPoly& matrix(size_t i) const {
        if (i >= phi.size()) throw InputError("aomoto: phi index out of range");
        return phi[i];
    }
};

struct ComplexReport {
    bool ok = true;
    std::vector<std::string> failures;
    std::vector<std::pair<size_t, long long>> generic_ranks;  // (i, rank)
};

/// Certify the complex: exact composition vanishing and generic rank beta_i
/// at seeded random points.
inline ComplexReport verify_complex(const AomotoComplex& C, uint64_t seed = 12345,
                                    int points_per_matrix = 5) {
    ComplexReport rep;
    Rng rng(seed ^ 0xfeedULL);
    for (size_t i = 0; i + 1 < C.phi.size(); ++i) {
        if (!compose(C.phi[i + 1], C.phi[i]).is_zero()) {
            rep.ok = false;
            rep.failures.push_back("phi_" + std::to_string(i + 1) + " * phi_" +
                                   std::to_string(i) + " != 0");
        }
    }
    for (size_t i = 0; i < C.phi.size(); ++i) {
        long long want = C.betti.beta_at(static_cast<long>(i));
        long long got = -1;
        for (int t = 0; t < points_per_matrix; ++t) {
            VecQ v = rng.next_point(C.nvars);
            long long r = static_cast<long long>(C.phi[i].eval(v).rank());
            if (got == -1) got = r;
            if (r != want) {
                rep.ok = false;
                std::ostringstream os;
                os << "rank(phi_" << i << ") = " << r << " != beta_" << i << " = " << want
                   << " at sampled point";
                rep.failures.push_back(os.str());
                break;
            }
        }
        rep.generic_ranks.emplace_back(i, got);
    }
    return rep;
}

/// Build the Aomoto complex for a central essential indecomposable
/// arrangement. The complex is certified before it is returned.
inline AomotoComplex aomoto(const ProjectiveModel& pm, uint64_t seed = 12345) {
    const BettiTable& t = pm.betti();
    const Arrangement& arr = pm.arrangement();
    size_t n = arr.n;
    AomotoComplex C;
    C.betti = t;
    C.nvars = pm.h1_dim();
    C.n = n;
    if (n >= 1 && t.beta[n - 1] <= 0)
        throw InputError("aomoto: arrangement is decomposable (beta_{n-1} = 0)");
    for (size_t i = 0; i + 1 < n; ++i) {
        std::vector<MatQ> L;
        for (size_t k = 1; k <= C.nvars; ++k) L.push_back(pm.left_mult(k, i));
        MatPoly phi(L[0].rows(), L[0].cols(), C.nvars);
        for (size_t r = 0; r < phi.rows(); ++r)
            for (size_t c = 0; c < phi.cols(); ++c) {
                VecQ coefs(C.nvars);
                for (size_t k = 0; k < C.nvars; ++k) coefs[k] = L[k](r, c);
                phi.set(r, c, MPoly::linear_form(coefs));
            }
        C.phi.push_back(std::move(phi));
    }
    ComplexReport rep = verify_complex(C, seed);
    if (!rep.ok) {
        std::string msg = "aomoto: complex certification failed:";
        for (const auto& f : rep.failures) msg += " [" + f + "]";
        throw InternalError(msg);
    }
    return C;
}

/// The line-arrangement matrix for cones over planar arrangements with at
/// most triple points: rows indexed by pairs (i, i_P) over the intersection
/// points P of the affine chart (H_d is the line at infinity), entries from
/// the multiplicity-two / multiplicity-three case table.
inline MatPoly triple_point_matrix(const Arrangement& arr, const MatroidData& m) {
    if (arr.n != 3) throw InputError("triple_point_matrix: needs n = 3");
    size_t d = arr.d();
    size_t nvars = d - 1;
    Mask bit_d = Mask{1} << (d - 1);
    struct Row { size_t i, ip, k; bool triple; };  // 1-based labels, k = third line
    std::vector<Row> rows;
    for (Mask f : m.flats(2)) {
        int mult = popcount(f);
        if (mult > 3)
            throw MultiplicityTooHigh("triple_point_matrix: rank-2 flat of multiplicity " +
                                      std::to_string(mult));
        if (f & bit_d) continue;  // point at infinity
        std::vector<size_t> elems = mask_to_set(f);  // 0-based, increasing
        size_t ip = elems.back() + 1;
        for (size_t idx = 0; idx + 1 < elems.size(); ++idx) {
            size_t i = elems[idx] + 1;
            if (elems.size() == 2) {
                rows.push_back({i, ip, 0, false});
            } else {
                size_t k = elems[(idx + 1) % 2] + 1;  // the other non-max element
                rows.push_back({i, ip, k, true});
            }
        }
    }
    MatPoly M(rows.size(), nvars, nvars);
    auto xv = [&](size_t label_1based) { return MPoly::var(nvars, label_1based - 1); };
    for (size_t r = 0; r < rows.size(); ++r) {
        const Row& row = rows[r];
        if (!row.triple) {
            M.set(r, row.i - 1, -xv(row.ip));
            M.set(r, row.ip - 1, xv(row.i));
        } else {
            // Third-line column carries x_i (forced by the circuit relation
            // e_i e_k = e_i e_p - e_k e_p; this also makes the matrix satisfy
            // M(a)b = -M(b)a and M(v)v = 0, which pin it down as the cup
            // product in this basis).
            M.set(r, row.ip - 1, xv(row.i));
            M.set(r, row.i - 1, -xv(row.ip) - xv(row.k));
            M.set(r, row.k - 1, xv(row.i));
        }
    }
    return M;
}

}  // namespace arrcohom
