#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "arrcohom/aomoto.hpp"
#include "arrcohom/matroid.hpp"
#include "arrcohom/rng.hpp"

namespace arrcohom {

/// Cohomology dimensions of the complex (H^*(U), v wedge .) at one point.
struct MembershipResult {
    VecQ point;
    std::vector<long long> dims;  // dim H^0 .. dim H^{n-1}

    bool in_stratum(size_t i, long long j) const {
        return dims.at(i) >= j;
    }
};

/// dims_i = b_i - rank(phi_{i-1} at v) - rank(phi_i at v), with the rank of
/// the missing end matrices taken as zero. Euler characteristic and
/// nonnegativity are asserted on every call.
inline MembershipResult membership(const AomotoComplex& C, const VecQ& v) {
    if (v.size() != C.nvars)
        throw DimensionMismatch("membership: vector length != b_1");
    size_t n = C.n;
    std::vector<long long> ranks(C.phi.size(), 0);
    for (size_t i = 0; i < C.phi.size(); ++i)
        ranks[i] = static_cast<long long>(C.phi[i].eval(v).rank());
    MembershipResult res;
    res.point = v;
    res.dims.assign(n, 0);
    long long euler_b = 0, euler_d = 0;
    for (size_t i = 0; i < n; ++i) {
        long long lower = (i >= 1 && i - 1 < C.phi.size()) ? ranks[i - 1] : 0;
        long long upper = (i < C.phi.size()) ? ranks[i] : 0;
        res.dims[i] = C.betti.b_at(static_cast<long>(i)) - lower - upper;
        if (res.dims[i] < 0)
            throw InternalError("membership: negative cohomology dimension");
        long long sign = (i % 2 == 0) ? 1 : -1;
        euler_b += sign * C.betti.b_at(static_cast<long>(i));
        euler_d += sign * res.dims[i];
    }
    if (euler_b != euler_d)
        throw InternalError("membership: Euler characteristic depends on the point");
    return res;
}

/// All (beta_i + 1 - j)-minors of phi_i, in lexicographic (row_set, col_set)
/// order. For i = n-1 the resonance locus is the whole space when
/// beta_{n-1} > 0, so the equation list is empty.
inline std::vector<MPoly> fitting_equations(const AomotoComplex& C, size_t i,
                                            long long j) {
    size_t n = C.n;
    if (i >= n) throw InputError("fitting_equations: degree out of range");
    long long beta_i = C.betti.beta_at(static_cast<long>(i));
    if (j < 1 || j > beta_i)
        throw InputError("fitting_equations: need 1 <= j <= beta_i = " +
                         std::to_string(beta_i));
    if (i == n - 1) return {};
    size_t k = static_cast<size_t>(beta_i + 1 - j);
    std::vector<MPoly> out;
    for (const auto& minor : C.matrix(i).minors(k)) out.push_back(minor.value);
    return out;
}

/// Column-reduced equations for R^1: delete column `col` (1-based) from
/// phi_1, take all maximal minors, divide each exactly by x_col. The quoted
/// divisibility is a theorem, so a failed division is an implementation bug.
inline std::vector<MPoly> reduced_equations(const AomotoComplex& C, size_t col) {
    if (C.n < 3) throw InputError("reduced_equations: needs n >= 3 (phi_1)");
    if (col < 1 || col > C.nvars)
        throw InputError("reduced_equations: column out of range");
    const MatPoly& phi1 = C.matrix(1);
    MatPoly trimmed = phi1.delete_col(col - 1);
    size_t beta1 = static_cast<size_t>(C.betti.beta_at(1));
    if (trimmed.cols() != beta1)
        throw InternalError("reduced_equations: b_1 != beta_1 + 1");
    MPoly xcol = MPoly::var(C.nvars, col - 1);
    std::vector<MPoly> out;
    for (const auto& minor : trimmed.minors(beta1)) {
        try {
            out.push_back(minor.value.divide_exact(xcol));
        } catch (const NotDivisible&) {
            throw InternalError("reduced_equations: maximal minor not divisible by x_" +
                                std::to_string(col));
        }
    }
    return out;
}

/// Nullspace basis at a rank stratum point, built from signed maximal minors
/// rather than elimination: select p-j-1 independent rows N of Mv and an
/// invertible block N_0; each extra column yields one kernel vector whose
/// entries are cofactors of [unit row; N].
inline std::vector<VecQ> kernel_basis(const MatQ& Mv, long long j) {
    size_t p = Mv.cols();
    if (j < 0 || static_cast<size_t>(j) + 1 > p)
        throw InputError("kernel_basis: j out of range");
    size_t want_rank = p - static_cast<size_t>(j) - 1;
    if (Mv.rank() != want_rank)
        throw RankMismatch("kernel_basis: point is not in the stated stratum (rank " +
                           std::to_string(Mv.rank()) + " != " + std::to_string(want_rank) + ")");
    // Greedy independent rows.
    std::vector<size_t> rows;
    for (size_t r = 0; r < Mv.rows() && rows.size() < want_rank; ++r) {
        rows.push_back(r);
        std::vector<size_t> all_cols(p);
        for (size_t c = 0; c < p; ++c) all_cols[c] = c;
        if (Mv.submatrix(rows, all_cols).rank() != rows.size()) rows.pop_back();
    }
    if (rows.size() != want_rank)
        throw InternalError("kernel_basis: could not select independent rows");
    std::vector<size_t> all_cols(p);
    for (size_t c = 0; c < p; ++c) all_cols[c] = c;
    MatQ N = Mv.submatrix(rows, all_cols);
    // Greedy invertible column block N_0.
    std::vector<size_t> block;
    for (size_t c = 0; c < p && block.size() < want_rank; ++c) {
        block.push_back(c);
        std::vector<size_t> nr(want_rank);
        for (size_t r = 0; r < want_rank; ++r) nr[r] = r;
        if (N.submatrix(nr, block).rank() != block.size()) block.pop_back();
    }
    if (block.size() != want_rank)
        throw InternalError("kernel_basis: no invertible block");
    std::vector<bool> in_block(p, false);
    for (size_t c : block) in_block[c] = true;
    std::vector<size_t> nr(want_rank);
    for (size_t r = 0; r < want_rank; ++r) nr[r] = r;
    std::vector<VecQ> out;
    for (size_t extra = 0; extra < p; ++extra) {
        if (in_block[extra]) continue;
        std::vector<size_t> J = block;
        J.push_back(extra);
        std::sort(J.begin(), J.end());
        VecQ b(p);
        for (size_t pos = 0; pos < J.size(); ++pos) {
            std::vector<size_t> sub;
            for (size_t t = 0; t < J.size(); ++t)
                if (t != pos) sub.push_back(J[t]);
            Rat minor = N.submatrix(nr, sub).det_bareiss();
            b[J[pos]] = (pos % 2 == 0) ? minor : -minor;
        }
        if (is_zero_vec(b)) throw InternalError("kernel_basis: zero kernel vector");
        if (!is_zero_vec(Mv * b))
            throw InternalError("kernel_basis: constructed vector not in kernel");
        out.push_back(std::move(b));
    }
    if (out.size() != static_cast<size_t>(j) + 1)
        throw InternalError("kernel_basis: wrong vector count");
    if (span_rank(out) != out.size())
        throw InternalError("kernel_basis: vectors not independent");
    return out;
}

/// A certified linear subspace inside R^i_j.
struct LinearComponent {
    std::vector<VecQ> basis;  // canonical echelon basis
    size_t dim = 0;
    std::string provenance;   // flat | propagation | user | closure
    int line_test_points = 0;
    int subspace_samples = 0;
};

struct TheoryBounds {
    long long q_lower = 0;         // n-1-i (or exact for i = 0, n-1)
    long long upper_d = 0;         // d-1
    long long upper_eagon = 0;     // (beta_{i-1}+j)(beta_{i+1}+j)
    long long upper_main2d = -1;   // beta_{i+1}+i+1, only for j = 1
    bool exact = false;            // q pinned exactly (i = 0 or i = n-1)
    bool connected_hypothesis = false;  // (beta_{i-1}+j)(beta_{i+1}+j) < d-2
};

struct ResonanceSummary {
    size_t i = 0;
    long long j = 1;
    std::vector<LinearComponent> components;
    long long dim_lower = 0;   // max component dimension
    long long q_upper = 0;     // d-1-dim_lower, then tightened by theory
    long long q_lower = 0;
    TheoryBounds bounds;
    uint64_t seed = 0;
    int budget = 0;
    std::vector<std::string> notes;
};

struct DiscoverOptions {
    int budget = 25;           // random points per subspace certificate
    uint64_t seed = 42;
};

namespace detail {

inline VecQ random_span_point(const std::vector<VecQ>& basis, Rng& rng) {
    VecQ v(basis[0].size());
    for (const VecQ& b : basis) {
        Rat c = Rat(mpz_class(rng.next_big_nonzero()));
        for (size_t t = 0; t < v.size(); ++t) v[t] += c * b[t];
    }
    return v;
}

inline bool in_span(const std::vector<VecQ>& basis, const VecQ& w) {
    std::vector<VecQ> stack = basis;
    stack.push_back(w);
    return span_rank(stack) == basis.size();
}

}  // namespace detail

/// Expand a seed inside R^i_j to a certified linear component.
/// Line containment along each candidate direction is checked at deg+1
/// points of the line (deg = beta_i+1-j bounds the degree of every defining
/// minor, so deg+1 vanishing points on a line are conclusive); containment
/// of the enlarged span is certified at `budget` seeded random points, whose
/// failure probability is bounded by Schwartz-Zippel.
inline std::optional<LinearComponent> expand_component(
    const AomotoComplex& C, size_t i, long long j, const VecQ& seed_vec,
    const std::vector<VecQ>& candidates, const std::string& provenance,
    const DiscoverOptions& opt, Rng& rng) {
    if (is_zero_vec(seed_vec)) return std::nullopt;
    if (!membership(C, seed_vec).in_stratum(i, j)) return std::nullopt;
    // Degree bound for the defining minors on a line: phi_i minors of size
    // beta_i+1-j for i <= n-2; at the top level the locus is cut out by
    // phi_{n-2} minors of size b_{n-1}+1-j.
    long long deg = (i + 1 < C.n)
                        ? (C.betti.beta_at(static_cast<long>(i)) + 1 - j)
                        : (C.betti.b_at(static_cast<long>(i)) + 1 - j);
    if (deg < 1) deg = 1;
    std::vector<VecQ> basis = {seed_vec};
    auto line_ok = [&](const VecQ& base, const VecQ& dir) {
        for (long long t = 1; t <= deg + 1; ++t) {
            VecQ pt(base.size());
            for (size_t s = 0; s < pt.size(); ++s)
                pt[s] = base[s] + Rat(static_cast<long>(t)) * dir[s];
            if (!membership(C, pt).in_stratum(i, j)) return false;
        }
        return true;
    };
    auto span_certified = [&](const std::vector<VecQ>& b) {
        for (int s = 0; s < opt.budget; ++s) {
            if (!membership(C, detail::random_span_point(b, rng)).in_stratum(i, j))
                return false;
        }
        return true;
    };
    // Also use candidate kernel directions at the seed for degree-1 loci;
    // every candidate is certified before it is adjoined, so extra
    // candidates never hurt soundness.
    std::vector<VecQ> pool = candidates;
    if (i < C.phi.size()) {
        auto [rk, null_basis] = rank_and_nullspace(C.matrix(i).eval(seed_vec));
        for (auto& v : null_basis) pool.push_back(std::move(v));
    }
    for (const VecQ& w : pool) {
        if (is_zero_vec(w) || detail::in_span(basis, w)) continue;
        VecQ base = detail::random_span_point(basis, rng);
        if (!line_ok(base, w)) continue;
        std::vector<VecQ> enlarged = basis;
        enlarged.push_back(w);
        if (!span_certified(enlarged)) continue;
        basis = std::move(enlarged);
    }
    LinearComponent comp;
    comp.basis = span_canonical_basis(basis);
    comp.dim = comp.basis.size();
    comp.provenance = provenance;
    comp.line_test_points = static_cast<int>(deg + 1);
    comp.subspace_samples = opt.budget;
    // Final certificate: every stored basis vector and 3 random span points.
    for (const VecQ& b : comp.basis)
        if (!membership(C, b).in_stratum(i, j))
            throw InternalError("component certificate failed on a basis vector");
    for (int s = 0; s < 3; ++s)
        if (!membership(C, detail::random_span_point(comp.basis, rng)).in_stratum(i, j))
            throw InternalError("component certificate failed on a span point");
    return comp;
}

/// Zero-sum seed and closure candidates for the local component of a
/// rank-2 flat, in the distinguished x-coordinates (x_k dual to e_k - e_d).
/// For flats avoiding the last hyperplane the e-coordinates must sum to
/// zero; for flats through it the constraint is absorbed by e_d.
inline std::pair<VecQ, std::vector<VecQ>> flat_seed(const MatroidData& m, Mask flat,
                                                    size_t nvars, Rng& rng) {
    size_t d = m.d();
    std::vector<size_t> elems = mask_to_set(flat);
    bool contains_last = (flat & (Mask{1} << (d - 1))) != 0;
    std::vector<VecQ> dirs;
    if (contains_last) {
        for (size_t e : elems) {
            if (e == d - 1) continue;
            VecQ u(nvars);
            u[e] = Rat(1);
            dirs.push_back(u);
        }
    } else {
        for (size_t t = 1; t < elems.size(); ++t) {
            VecQ u(nvars);
            u[elems[0]] = Rat(1);
            u[elems[t]] = Rat(-1);
            dirs.push_back(u);
        }
    }
    VecQ seed(nvars);
    for (const VecQ& u : dirs) {
        Rat c = Rat(mpz_class(rng.next_in(1, 1000)));
        for (size_t s = 0; s < nvars; ++s) seed[s] += c * u[s];
    }
    return {seed, dirs};
}

/// Component discovery for R^i_j. Certified-sound, not complete: flats seed
/// the local components of R^1, previously discovered components seed higher
/// degrees by propagation, and callers may add seeds. The summary reports
/// lower bounds on dimensions by design.
inline ResonanceSummary discover(const AomotoComplex& C, const MatroidData& m,
                                 size_t i, long long j,
                                 const std::vector<VecQ>& extra_seeds,
                                 const ResonanceSummary* previous,
                                 const DiscoverOptions& opt = {}) {
    size_t n = C.n;
    if (i >= n) throw InputError("discover: degree out of range");
    ResonanceSummary sum;
    sum.i = i;
    sum.j = j;
    sum.seed = opt.seed;
    sum.budget = opt.budget;
    Rng rng(opt.seed ^ (0x5eedULL + i * 1315423911ULL + static_cast<uint64_t>(j)));

    struct Cand { VecQ seed; std::vector<VecQ> dirs; std::string prov; };
    std::vector<Cand> cands;
    if (i == 1) {
        for (Mask f : m.flats(2)) {
            if (popcount(f) < 3) continue;
            auto [seed, dirs] = flat_seed(m, f, C.nvars, rng);
            cands.push_back({seed, dirs, "flat"});
        }
    }
    if (previous != nullptr) {
        for (const LinearComponent& comp : previous->components) {
            Cand c;
            c.prov = "propagation";
            c.dirs = comp.basis;
            c.seed = detail::random_span_point(comp.basis, rng);
            cands.push_back(std::move(c));
        }
    }
    for (const VecQ& u : extra_seeds) {
        if (u.size() != C.nvars)
            throw DimensionMismatch("discover: seed vector length != b_1");
        cands.push_back({u, {}, "user"});
    }
    // Unit directions are always candidates; certification filters them.
    std::vector<VecQ> units;
    for (size_t k = 0; k < C.nvars; ++k) {
        VecQ u(C.nvars);
        u[k] = Rat(1);
        units.push_back(u);
    }
    for (const Cand& c : cands) {
        std::vector<VecQ> pool = c.dirs;
        for (const Cand& other : cands)
            if (&other != &c) pool.push_back(other.seed);
        pool.insert(pool.end(), units.begin(), units.end());
        std::optional<LinearComponent> comp =
            expand_component(C, i, j, c.seed, pool, c.prov, opt, rng);
        if (!comp) {
            sum.notes.push_back("seed (" + c.prov + ") failed membership");
            continue;
        }
        bool dup = false;
        for (const LinearComponent& known : sum.components)
            if (known.basis == comp->basis) { dup = true; break; }
        if (!dup) sum.components.push_back(std::move(*comp));
    }
    std::sort(sum.components.begin(), sum.components.end(),
              [](const LinearComponent& a, const LinearComponent& b) {
                  if (a.dim != b.dim) return a.dim > b.dim;
                  for (size_t r = 0; r < a.basis.size(); ++r)
                      for (size_t c = 0; c < a.basis[r].size(); ++c)
                          if (a.basis[r][c] != b.basis[r][c])
                              return a.basis[r][c] < b.basis[r][c];
                  return false;
              });
    sum.dim_lower = 0;
    for (const LinearComponent& comp : sum.components)
        sum.dim_lower = std::max(sum.dim_lower, static_cast<long long>(comp.dim));
    long long d1 = static_cast<long long>(C.nvars);  // d-1
    sum.q_upper = d1 - sum.dim_lower;
    sum.q_lower = (i == 0) ? d1 : static_cast<long long>(n) - 1 - static_cast<long long>(i);
    if (i == n - 1) sum.q_lower = 0;
    return sum;
}

/// Theory brackets for the codimension, combined with discovery. A certified
/// component that violates a theorem bound is an implementation bug and
/// throws BoundViolation.
inline ResonanceSummary codim_report(const AomotoComplex& C, size_t i, long long j,
                                     ResonanceSummary sum) {
    size_t n = C.n;
    long long d1 = static_cast<long long>(C.nvars);
    TheoryBounds b;
    b.upper_d = d1;
    if (i == 0) {
        // phi_0 is the coordinate column, so R^0 = {0} exactly.
        b.exact = true;
        b.q_lower = d1;
        sum.q_lower = d1;
        sum.q_upper = d1;
    } else if (i == n - 1) {
        // dim H^{n-1}(v) >= beta_{n-1} > 0 everywhere.
        b.exact = true;
        b.q_lower = 0;
        sum.q_lower = 0;
        sum.q_upper = 0;
    } else {
        long long bi_m = C.betti.beta_at(static_cast<long>(i) - 1);
        long long bi_p = C.betti.beta_at(static_cast<long>(i) + 1);
        b.q_lower = static_cast<long long>(n) - 1 - static_cast<long long>(i);
        b.upper_eagon = (bi_m + j) * (bi_p + j);
        if (j == 1) b.upper_main2d = bi_p + static_cast<long long>(i) + 1;
        long long upper = std::min(b.upper_d, b.upper_eagon);
        if (j == 1) upper = std::min(upper, b.upper_main2d);
        sum.q_lower = b.q_lower;
        sum.q_upper = std::min(sum.q_upper, upper);
        b.connected_hypothesis = b.upper_eagon < d1 - 1;  // (beta+j)(beta+j) < d-2
        if (sum.q_lower > sum.q_upper)
            throw BoundViolation(
                "codim_report: certified components force q_" + std::to_string(i) +
                " < " + std::to_string(sum.q_lower) + " (theory lower bound)");
    }
    sum.bounds = b;
    return sum;
}

struct PropagationReport {
    int points_checked = 0;
    int components_checked = 0;
    int skipped_levels = 0;
    bool ok = true;
};

/// Propagation of resonance: every sampled point of a discovered R^i
/// component must lie in R^{i+1}_2, in R^{i+1} and, for i < n-2, in
/// R^{i+1}_j for the extended j range (j-1)(i+1) <= n-3.
inline PropagationReport propagation_check(const AomotoComplex& C,
                                           const std::vector<ResonanceSummary>& levels,
                                           int samples, uint64_t seed) {
    PropagationReport rep;
    Rng rng(seed ^ 0x9a9a9aULL);
    size_t n = C.n;
    for (const ResonanceSummary& sum : levels) {
        if (sum.j != 1) continue;
        size_t i = sum.i;
        if (i + 1 >= n) continue;
        if (sum.components.empty()) {
            ++rep.skipped_levels;
            continue;
        }
        long long jmax = 2;
        if (i + 2 < n) {
            // extended range: j <= 1 + (n-3)/(i+1)
            while ((jmax + 1 - 1) * static_cast<long long>(i + 1) <=
                   static_cast<long long>(n) - 3)
                ++jmax;
        }
        for (const LinearComponent& comp : sum.components) {
            ++rep.components_checked;
            for (int s = 0; s < samples; ++s) {
                VecQ v = detail::random_span_point(comp.basis, rng);
                MembershipResult res = membership(C, v);
                ++rep.points_checked;
                if (!res.in_stratum(i, 1))
                    throw ViolationFound("propagation: sampled point left R^i");
                if (!res.in_stratum(i + 1, 2))
                    throw ViolationFound("propagation: R^" + std::to_string(i) +
                                         " point not in R^" + std::to_string(i + 1) + "_2");
                for (long long jj = 2; jj <= jmax; ++jj)
                    if (!res.in_stratum(i + 1, jj))
                        throw ViolationFound("propagation: extended inclusion failed at j = " +
                                             std::to_string(jj));
            }
        }
    }
    return rep;
}

}  // namespace arrcohom
