#include <catch2/catch_amalgamated.hpp>

#include "arrcohom/matpoly.hpp"
#include "arrcohom/matq.hpp"
#include "arrcohom/mpoly.hpp"
#include "arrcohom/rat.hpp"
#include "arrcohom/rng.hpp"

using namespace arrcohom;

namespace {

// Test-only determinant oracle: plain cofactor expansion over Rat, written
// independently of the Bareiss path it checks.
Rat det_cofactor_oracle(const MatQ& m) {
    size_t n = m.rows();
    REQUIRE(n == m.cols());
    if (n == 0) return Rat(1);
    if (n == 1) return m(0, 0);
    Rat acc;
    std::vector<size_t> all_rows;
    for (size_t i = 1; i < n; ++i) all_rows.push_back(i);
    for (size_t c = 0; c < n; ++c) {
        if (m(0, c).is_zero()) continue;
        std::vector<size_t> cols;
        for (size_t j = 0; j < n; ++j)
            if (j != c) cols.push_back(j);
        Rat sub = det_cofactor_oracle(m.submatrix(all_rows, cols));
        Rat term = m(0, c) * sub;
        if (c % 2 == 0) acc += term; else acc -= term;
    }
    return acc;
}

MatQ random_matq(Rng& rng, size_t rows, size_t cols, int64_t bound = 20) {
    MatQ m(rows, cols);
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) {
            int64_t num = rng.next_in(-bound, bound);
            int64_t den = rng.next_in(1, 6);
            m(i, j) = Rat(num, den);
        }
    return m;
}

MatPoly random_linear_matpoly(Rng& rng, size_t rows, size_t cols, size_t nvars) {
    MatPoly m(rows, cols, nvars);
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) {
            VecQ coefs(nvars);
            for (size_t k = 0; k < nvars; ++k)
                coefs[k] = Rat(rng.next_in(-4, 4));
            m.set(i, j, MPoly::linear_form(coefs));
        }
    return m;
}

MPoly x(size_t nvars, size_t i) { return MPoly::var(nvars, i); }

}  // namespace

TEST_CASE("Rat basics and serialization") {
    REQUIRE(Rat(6, 4) == Rat(3, 2));
    REQUIRE(Rat(-6, -4) == Rat(3, 2));
    REQUIRE(Rat(6, -4).str() == "-3/2");
    REQUIRE(Rat(8, 4).str() == "2");
    REQUIRE(Rat::parse("7/21") == Rat(1, 3));
    REQUIRE(Rat::parse("-5") == Rat(-5));
    REQUIRE_THROWS_AS(Rat::parse("1/0"), InputError);
    REQUIRE_THROWS_AS(Rat(1, 0), InputError);
    REQUIRE(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
    REQUIRE(Rat(2, 3) * Rat(9, 4) == Rat(3, 2));
    REQUIRE(Rat(1) / Rat(-4) < Rat(0));
}

TEST_CASE("rank_and_nullspace on the pinned examples") {
    SECTION("3x3 identity: rank 3, empty basis") {
        auto [rank, basis] = rank_and_nullspace(MatQ::identity(3));
        REQUIRE(rank == 3);
        REQUIRE(basis.empty());
    }
    SECTION("2x3 zero matrix: rank 0, three unit vectors") {
        auto [rank, basis] = rank_and_nullspace(MatQ(2, 3));
        REQUIRE(rank == 0);
        REQUIRE(basis.size() == 3);
        for (size_t i = 0; i < 3; ++i) {
            for (size_t j = 0; j < 3; ++j)
                REQUIRE(basis[i][j] == (i == j ? Rat(1) : Rat(0)));
        }
    }
    SECTION("[[1,2,3],[2,4,6]]: rank 1, nullspace dim 2, echelon basis") {
        MatQ m = MatQ::from_rows({{Rat(1), Rat(2), Rat(3)}, {Rat(2), Rat(4), Rat(6)}});
        auto [rank, basis] = rank_and_nullspace(m);
        REQUIRE(rank == 1);
        REQUIRE(basis.size() == 2);
        REQUIRE(basis[0] == VecQ{Rat(-2), Rat(1), Rat(0)});
        REQUIRE(basis[1] == VecQ{Rat(-3), Rat(0), Rat(1)});
        for (const VecQ& v : basis) REQUIRE(is_zero_vec(m * v));
    }
}

TEST_CASE("rank + nullity = cols and M v = 0, randomized") {
    Rng rng(101);
    for (int trial = 0; trial < 40; ++trial) {
        size_t rows = 1 + rng.next_u64() % 5;
        size_t cols = 1 + rng.next_u64() % 5;
        MatQ m = random_matq(rng, rows, cols, 6);
        auto [rank, basis] = rank_and_nullspace(m);
        REQUIRE(rank + basis.size() == cols);
        for (const VecQ& v : basis) REQUIRE(is_zero_vec(m * v));
    }
}

TEST_CASE("MatQ determinant: Bareiss pivots vs cofactor-expansion oracle") {
    Rng rng(202);
    for (int trial = 0; trial < 50; ++trial) {
        size_t n = 1 + rng.next_u64() % 5;
        MatQ m = random_matq(rng, n, n, 8);
        if (trial % 5 == 0 && n >= 2) {
            // Force singularity: make the last row a multiple of the first.
            for (size_t j = 0; j < n; ++j) m(n - 1, j) = m(0, j) * Rat(3);
        }
        REQUIRE(m.det_bareiss() == det_cofactor_oracle(m));
    }
}

TEST_CASE("MPoly arithmetic and canonical order") {
    MPoly p = x(3, 0) * x(3, 1) + x(3, 0) * x(3, 0);
    REQUIRE(p.str() == "x_1^2 + x_1*x_2");
    REQUIRE(p.degree() == 2);
    REQUIRE(p.is_homogeneous(2));
    MPoly q = p - p;
    REQUIRE(q.is_zero());
    REQUIRE(q.term_count() == 0);

    MPoly lin = MPoly::linear_form({Rat(2), Rat(0), Rat(-1, 2)});
    REQUIRE(lin.str() == "2*x_1 - 1/2*x_3");
    REQUIRE(lin.eval({Rat(1), Rat(5), Rat(4)}) == Rat(0));
}

TEST_CASE("MPoly exact division") {
    SECTION("monomial factor") {
        MPoly p = x(3, 0) * x(3, 1) + x(3, 0) * x(3, 0);
        REQUIRE(p.divide_exact(x(3, 0)) == x(3, 1) + x(3, 0));
    }
    SECTION("zero dividend") {
        REQUIRE(MPoly::zero(3).divide_exact(x(3, 2)).is_zero());
    }
    SECTION("nonzero remainder signals NotDivisible") {
        MPoly p = x(3, 0) + x(3, 1);
        REQUIRE_THROWS_AS(p.divide_exact(x(3, 0)), NotDivisible);
    }
    SECTION("round trip on random products") {
        Rng rng(77);
        for (int t = 0; t < 25; ++t) {
            MPoly a(2), b(2);
            for (int k = 0; k < 4; ++k) {
                Exponents e{static_cast<uint32_t>(rng.next_u64() % 3),
                            static_cast<uint32_t>(rng.next_u64() % 3)};
                a.add_term(e, Rat(rng.next_in(-3, 3)));
                Exponents f{static_cast<uint32_t>(rng.next_u64() % 3),
                            static_cast<uint32_t>(rng.next_u64() % 3)};
                b.add_term(f, Rat(rng.next_in(-3, 3)));
            }
            if (b.is_zero()) continue;
            REQUIRE((a * b).divide_exact(b) == a);
        }
    }
}

TEST_CASE("MatPoly determinant on the pinned examples") {
    SECTION("diag(x1, x2)") {
        MatPoly m(2, 2, 2);
        m.set(0, 0, x(2, 0));
        m.set(1, 1, x(2, 1));
        REQUIRE(m.det() == x(2, 0) * x(2, 1));
    }
    SECTION("[[x1,x2],[x2,x1]] = x1^2 - x2^2") {
        MatPoly m(2, 2, 2);
        m.set(0, 0, x(2, 0));
        m.set(0, 1, x(2, 1));
        m.set(1, 0, x(2, 1));
        m.set(1, 1, x(2, 0));
        REQUIRE(m.det() == x(2, 0) * x(2, 0) - x(2, 1) * x(2, 1));
    }
    SECTION("repeated row kills the determinant") {
        Rng rng(9);
        MatPoly m = random_linear_matpoly(rng, 3, 3, 2);
        MatPoly mm(3, 3, 2);
        for (size_t j = 0; j < 3; ++j) {
            mm.set(0, j, m(0, j));
            mm.set(1, j, m(1, j));
            mm.set(2, j, m(0, j));
        }
        REQUIRE(mm.det().is_zero());
    }
}

TEST_CASE("minors: counts, degree, and the k=1 / proportional cases") {
    SECTION("k=1 minors of a 2x2 matrix are its entries") {
        MatPoly m(2, 2, 2);
        m.set(0, 0, x(2, 0));
        m.set(1, 1, x(2, 1));
        auto ms = m.minors(1);
        REQUIRE(ms.size() == 4);
        REQUIRE(ms[0].value == x(2, 0));
        REQUIRE(ms[1].value.is_zero());
        REQUIRE(ms[2].value.is_zero());
        REQUIRE(ms[3].value == x(2, 1));
    }
    SECTION("all-equal entries: every 2-minor vanishes") {
        MatPoly m(3, 3, 1);
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j) m.set(i, j, x(1, 0));
        for (const auto& mi : m.minors(2)) REQUIRE(mi.value.is_zero());
    }
    SECTION("6x5 matrix has C(6,4)*C(5,4) = 75 4-minors, each homogeneous quartic") {
        Rng rng(5150);
        MatPoly m = random_linear_matpoly(rng, 6, 5, 3);
        auto ms = m.minors(4);
        REQUIRE(ms.size() == 75);
        for (const auto& mi : ms) {
            if (!mi.value.is_zero()) REQUIRE(mi.value.is_homogeneous(4));
        }
        REQUIRE_THROWS_AS(m.minors(0), InputError);
        REQUIRE_THROWS_AS(m.minors(6), InputError);
    }
}

TEST_CASE("homogeneity: every k-minor of a linear matrix is homogeneous of degree k") {
    Rng rng(31);
    for (int t = 0; t < 6; ++t) {
        size_t rows = 2 + rng.next_u64() % 3;
        size_t cols = 2 + rng.next_u64() % 3;
        MatPoly m = random_linear_matpoly(rng, rows, cols, 3);
        for (size_t k = 1; k <= std::min(rows, cols); ++k)
            for (const auto& mi : m.minors(k))
                if (!mi.value.is_zero()) REQUIRE(mi.value.is_homogeneous(static_cast<long>(k)));
    }
}

TEST_CASE("eval: homogeneity, linearity, zero point") {
    Rng rng(404);
    MatPoly m = random_linear_matpoly(rng, 4, 3, 3);
    SECTION("zero point gives the zero matrix") {
        REQUIRE(m.eval(VecQ(3)).is_zero());
    }
    SECTION("doubling the point doubles every entry") {
        VecQ v = rng.next_small_point(3, 50);
        VecQ v2(3);
        for (size_t i = 0; i < 3; ++i) v2[i] = v[i] * Rat(2);
        REQUIRE(m.eval(v2) == m.eval(v) * Rat(2));
    }
    SECTION("length mismatch is rejected") {
        REQUIRE_THROWS_AS(m.eval(VecQ(4)), DimensionMismatch);
    }
}

TEST_CASE("minors vanish at a point iff the evaluated rank drops, up to 6x6") {
    Rng rng(606);
    for (int t = 0; t < 8; ++t) {
        size_t rows = 2 + rng.next_u64() % 5;  // up to 6
        size_t cols = 2 + rng.next_u64() % 5;
        MatPoly m = random_linear_matpoly(rng, rows, cols, 3);
        // Half the points exact-random, half engineered small so that rank
        // deficiency actually occurs sometimes.
        VecQ pt = (t % 2 == 0) ? rng.next_point(3) : rng.next_small_point(3, 1);
        MatQ ev = m.eval(pt);
        size_t r = ev.rank();
        for (size_t k = 1; k <= std::min(rows, cols); ++k) {
            bool all_vanish = true;
            for (const auto& mi : m.minors(k))
                if (!mi.value.eval(pt).is_zero()) { all_vanish = false; break; }
            REQUIRE(all_vanish == (r < k));
        }
    }
}

TEST_CASE("rank at random points never exceeds generic rank") {
    Rng rng(707);
    MatPoly m = random_linear_matpoly(rng, 4, 4, 2);
    size_t generic = 0;
    std::vector<size_t> ranks;
    for (int t = 0; t < 12; ++t) {
        size_t r = m.eval(rng.next_point(2)).rank();
        ranks.push_back(r);
        generic = std::max(generic, r);
    }
    size_t hit = 0;
    for (size_t r : ranks) {
        REQUIRE(r <= generic);
        if (r == generic) ++hit;
    }
    // Equality for all but finitely many scalings: with big random points all
    // samples should reach the generic rank.
    REQUIRE(hit == ranks.size());
}
