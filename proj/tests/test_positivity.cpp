#include <catch2/catch_amalgamated.hpp>

#include "arrcohom/fixtures.hpp"
#include "arrcohom/positivity.hpp"

using namespace arrcohom;

namespace {

BettiTable table_of(const Arrangement& a) {
    MatroidData m(a);
    return betti(a, m);
}

BettiTable closed_form_table(long d, long n) {
    // Generic-arrangement table straight from binomials, independent of the
    // lattice pipeline.
    BettiTable t;
    for (long i = 0; i <= n; ++i) {
        long long bi = binom(d - 1, i).get_si();
        long long bim = binom(d - 1, i - 1).get_si();
        t.h.push_back(i < n ? bi + bim : bim);
        if (i < n) {
            t.b.push_back(bi);
            t.beta.push_back(binom(d - 2, i).get_si());
        }
    }
    return t;
}

const IneqRecord& find_record(const PositivityReport& rep, const std::string& name) {
    for (const IneqRecord& r : rep.records)
        if (r.name == name) return r;
    FAIL("record not found: " + name);
    static IneqRecord dummy;
    return dummy;
}

MPoly devP(size_t nv, size_t i) { return MPoly::var(nv, i); }

}  // namespace

TEST_CASE("closed-form bound evaluations") {
    REQUIRE(dowling_wilson(5, 3, 2) == 7);   // 3 + 2*2
    REQUIRE(brylawski(6, 3, 2) == 11);       // 3 + 3*3 - 1
    REQUIRE(brylawski(6, 3, 1) == 6);        // 3 + 3*1, no delta
    REQUIRE(in_omega(6, 3));
    REQUIRE_FALSE(in_omega(7, 4));           // the excluded pair
    REQUIRE_FALSE(in_omega(5, 4));           // x - y < 2
    REQUIRE(in_omega(8, 4));
}

TEST_CASE("verify_lower_bounds on the braid: every applicable row holds, two are tight") {
    BettiTable t = table_of(named_fixture("braid-essential"));
    PositivityReport rep = verify_lower_bounds(t, 6, 3, true);
    for (const IneqRecord& r : rep.records) {
        if (r.name == "corBrbds.b[i=1]") {
            REQUIRE(r.verdict == "hypothesis-not-met");  // needs slice dim >= 2
        } else {
            REQUIRE(r.verdict == "holds");
        }
    }
    REQUIRE(find_record(rep, "thmBr.h[i=2]").note == "tight");   // 11 = P^B(6,3,2)
    REQUIRE(find_record(rep, "thmBr.crapo").note == "tight");    // beta_2 = 2 = d+2-2n
}

TEST_CASE("verify_lower_bounds: (7,4) is Omega-excluded") {
    BettiTable t = closed_form_table(7, 4);
    PositivityReport rep = verify_lower_bounds(t, 7, 4, true);
    REQUIRE(find_record(rep, "thmBr.h[i=1]").verdict == "hypothesis-not-met");
    REQUIRE(find_record(rep, "thmBr.crapo").verdict == "hypothesis-not-met");
    // Sliced variants remain available through admissible s values.
    REQUIRE(find_record(rep, "corBrbds.h[i=1]").verdict == "holds");
    // Dowling-Wilson needs no Omega hypothesis.
    REQUIRE(find_record(rep, "DW[i=2]").verdict == "holds");
    REQUIRE_FALSE(rep.any_fails());
}

TEST_CASE("verify_lower_bounds: generic d=8, n=4 all hold") {
    BettiTable t = table_of(generic_arrangement(8, 4, 12));
    REQUIRE(t.h[2] == 28);
    PositivityReport rep = verify_lower_bounds(t, 8, 4, true);
    REQUIRE_FALSE(rep.any_fails());
    for (const IneqRecord& r : rep.records) REQUIRE(r.verdict != "fails");
}

TEST_CASE("verify_lower_bounds: decomposable input reports unmet hypotheses, never skips") {
    BettiTable t = table_of(named_fixture("decomposable"));
    PositivityReport rep = verify_lower_bounds(t, 4, 3, false);
    REQUIRE_FALSE(rep.any_fails());
    REQUIRE(find_record(rep, "DW[i=1]").verdict == "holds");
    REQUIRE(find_record(rep, "thmBr.h[i=1]").verdict == "hypothesis-not-met");
    REQUIRE(find_record(rep, "propNewBounds.b[i=1]").verdict == "hypothesis-not-met");
}

TEST_CASE("chern_series: braid j=1 truncated at 3 is (1, 3, 5)") {
    BettiTable t = table_of(named_fixture("braid-essential"));
    ChernSeries cs = chern_series(t, 1, 3);
    REQUIRE(cs.coeffs == std::vector<mpz_class>{1, 3, 5});
}

TEST_CASE("chern_series: generic d=4, n=3 vanishing case") {
    BettiTable t = table_of(generic_arrangement(4, 3, 2));
    ChernSeries cs = chern_series(t, 1, 3);
    REQUIRE(cs.coeffs == std::vector<mpz_class>{1, 1, 0});
}

TEST_CASE("chern_series: c_1 closed form over the generic grid") {
    for (long n = 3; n <= 5; ++n) {
        for (long d = n + 1; d <= 8; ++d) {
            BettiTable t = closed_form_table(d, n);
            for (long j = 1; j < n; ++j) {
                ChernSeries cs = chern_series(t, j, 2);
                REQUIRE(cs.at(1) == binom(d - 3, j));
            }
        }
    }
}

TEST_CASE("schur_values: Jacobi-Trudi reproduces the low-weight list symbolically") {
    // Treat c_1, c_2, c_3 as variables and expand the determinants by hand.
    size_t nv = 3;
    MPoly c1 = devP(nv, 0), c2 = devP(nv, 1), c3 = devP(nv, 2);
    MPoly one = MPoly::constant(nv, Rat(1));
    // weight 2: det [[c_2, c_3], [c_0, c_1]] for (1,1); (2) is just c_2.
    MPoly det11 = c1 * c1 - c2 * one;
    REQUIRE(det11 == c1 * c1 - c2);
    // weight 3, (2,1): det [[c_2, c_3], [1, c_1]].
    MPoly det21 = c2 * c1 - c3 * one;
    REQUIRE(det21 == c1 * c2 - c3);
    // weight 3, (1,1,1): 3x3 determinant expanded along the last row.
    MPoly det111 = c1 * (c1 * c1 - c2) - c2 * c1 + c3;
    REQUIRE(det111 == c1 * c1 * c1 - Rat(2) * (c1 * c2) + c3);
    // The numeric evaluator agrees with these shapes on random values.
    Rng rng(99);
    for (int t = 0; t < 10; ++t) {
        ChernSeries cs;
        cs.j = 1;
        cs.q_used = 4;
        cs.coeffs = {mpz_class(1), mpz_class(rng.next_in(-9, 9)),
                     mpz_class(rng.next_in(-9, 9)), mpz_class(rng.next_in(-9, 9))};
        VecQ pt{Rat(cs.coeffs[1]), Rat(cs.coeffs[2]), Rat(cs.coeffs[3])};
        std::vector<SchurValue> vals = schur_values(cs, 3);
        REQUIRE(vals.size() == 6);  // (1); (2),(1,1); (3),(2,1),(1,1,1)
        REQUIRE(Rat(vals[0].value) == pt[0]);
        REQUIRE(Rat(vals[1].value) == pt[1]);
        REQUIRE(Rat(vals[2].value) == det11.eval(pt));
        REQUIRE(Rat(vals[3].value) == pt[2]);
        REQUIRE(Rat(vals[4].value) == det21.eval(pt));
        REQUIRE(Rat(vals[5].value) == det111.eval(pt));
    }
}

TEST_CASE("schur_values: braid j=1 weight-2 values are {5, 4}") {
    BettiTable t = table_of(named_fixture("braid-essential"));
    ChernSeries cs = chern_series(t, 1, 3);
    std::vector<SchurValue> vals = schur_values(cs, 2);
    REQUIRE(vals.size() == 3);
    REQUIRE(vals[1].value == 5);  // (2)
    REQUIRE(vals[2].value == 4);  // (1,1)
    for (const SchurValue& v : vals) REQUIRE(v.value >= 0);
}

TEST_CASE("thm_main2_suite: braid j=1 at the pinned bracket q = 3") {
    BettiTable t = table_of(named_fixture("braid-essential"));
    QBracket q{3, 3, "pinned"};
    PositivityReport rep = thm_main2_suite(t, 1, q, 3, true, GateStatus::met);
    REQUIRE_FALSE(rep.any_fails());
    REQUIRE(find_record(rep, "thmMain2.a[(1)]").verdict == "holds");
    REQUIRE(find_record(rep, "thmMain2.a[(2)]").verdict == "holds");
    REQUIRE(find_record(rep, "thmMain2.a[(1,1)]").verdict == "holds");
    REQUIRE(find_record(rep, "thmMain2.b").verdict == "holds");  // empty window
    const IneqRecord& d_rec = find_record(rep, "thmMain2.d");
    REQUIRE(d_rec.verdict == "holds");
    REQUIRE(d_rec.lhs == "2");
    REQUIRE(d_rec.rhs == "1");
    REQUIRE(find_record(rep, "thmMain2.e").verdict == "holds");  // 9 >= 5
}

TEST_CASE("thm_main2_suite: generic d=4, n=3 vanishing case is consistent with (b)") {
    BettiTable t = table_of(generic_arrangement(4, 3, 5));
    QBracket q{3, 3, "pinned"};
    PositivityReport rep = thm_main2_suite(t, 1, q, 3, true, GateStatus::met);
    REQUIRE_FALSE(rep.any_fails());
    // beta_2 = 1, c_2 = 0: the window 1 < i < 3 is non-vacuous and passes.
    const IneqRecord& b_rec = find_record(rep, "thmMain2.b");
    REQUIRE(b_rec.verdict == "holds");
    REQUIRE(b_rec.note != "vacuous window");
}

TEST_CASE("thm_main2_suite: loose brackets degrade to inconclusive, never to fails") {
    BettiTable t = table_of(named_fixture("braid-essential"));
    PositivityReport tight = thm_main2_suite(t, 1, {3, 3, "pinned"}, 3, true);
    PositivityReport loose = thm_main2_suite(t, 1, {1, 4, "theory"}, 3, true);
    for (const IneqRecord& r : loose.records) REQUIRE(r.verdict != "fails");
    // Monotone truncation soundness: a record holding at the tight bracket
    // must not fail at any smaller q.
    for (long ql = 1; ql <= 3; ++ql) {
        PositivityReport rep = thm_main2_suite(t, 1, {ql, ql, "pinned"}, 3, true);
        for (const IneqRecord& r : rep.records) {
            for (const IneqRecord& tr : tight.records)
                if (tr.name == r.name && tr.verdict == "holds")
                    REQUIRE(r.verdict != "fails");
        }
    }
}

TEST_CASE("thm_main2_suite: hypothesis gates") {
    BettiTable braid = table_of(named_fixture("braid-essential"));
    SECTION("decomposable input refuses every part") {
        BettiTable t = table_of(named_fixture("decomposable"));
        PositivityReport rep = thm_main2_suite(t, 1, {1, 1, "theory"}, 3, false);
        for (const IneqRecord& r : rep.records)
            REQUIRE(r.verdict == "hypothesis-not-met");
    }
    SECTION("top-degree gate refuted") {
        PositivityReport rep =
            thm_main2_suite(braid, 1, {3, 3, "pinned"}, 3, true, GateStatus::refuted);
        for (const IneqRecord& r : rep.records)
            REQUIRE(r.verdict == "hypothesis-not-met");
    }
    SECTION("j out of range") {
        REQUIRE_THROWS_AS(thm_main2_suite(braid, 2, {1, 1, "theory"}, 3, true),
                          InputError);
    }
}

TEST_CASE("b2_b3_bounds: equality cases by exact bracketing") {
    SECTION("generic d=5, n=4 attains equality in the b_2 root bound") {
        BettiTable t = table_of(generic_arrangement(5, 4, 31));
        PositivityReport rep = b2_b3_bounds(t, 5, 4, {3, 3, "pinned"}, {});
        REQUIRE_FALSE(rep.any_fails());
        const IneqRecord& r = find_record(rep, "eqb2");
        REQUIRE(r.verdict == "holds");
        REQUIRE(r.note.find("equality") != std::string::npos);  // 3^2 = 9 = 8d-31
        REQUIRE(find_record(rep, "b2.linear").verdict == "holds");
    }
    SECTION("generic d=6, n=5 attains equality in the b_3 root bound") {
        BettiTable t = table_of(generic_arrangement(6, 5, 32));
        PositivityReport rep =
            b2_b3_bounds(t, 6, 5, {3, 3, "pinned"}, {3, 3, "pinned"});
        REQUIRE_FALSE(rep.any_fails());
        const IneqRecord& r = find_record(rep, "eqb3");
        REQUIRE(r.verdict == "holds");
        REQUIRE(r.note.find("equality") != std::string::npos);
        REQUIRE(find_record(rep, "b3.linear").verdict == "holds");  // 10 > 9
    }
    SECTION("loose q bracket flags the root bound inconclusive") {
        BettiTable t = table_of(generic_arrangement(5, 4, 33));
        PositivityReport rep = b2_b3_bounds(t, 5, 4, {1, 4, "theory"}, {});
        REQUIRE(find_record(rep, "eqb2").verdict == "inconclusive-q");
    }
    SECTION("n outside {4,5} is rejected") {
        BettiTable t = table_of(generic_arrangement(5, 3, 34));
        REQUIRE_THROWS_AS(b2_b3_bounds(t, 5, 3, {1, 1, "theory"}, {}), InputError);
    }
}

TEST_CASE("generic_oracle closed forms") {
    GenericOracle g1 = generic_oracle(5, 3);
    REQUIRE(g1.b == std::vector<long long>{1, 4, 6});
    GenericOracle g2 = generic_oracle(7, 4);
    REQUIRE(g2.beta == std::vector<long long>{1, 5, 10, 10});
    GenericOracle g3 = generic_oracle(4, 3);
    REQUIRE(g3.c1 == std::vector<long long>{1, 1, 0});
    REQUIRE_THROWS_AS(generic_oracle(3, 3), InputError);
}

TEST_CASE("generic pipeline output equals the closed forms exactly") {
    Rng rng(7171);
    for (long n = 3; n <= 5; ++n) {
        for (long d = n + 1; d <= 8; ++d) {
            BettiTable t = table_of(generic_arrangement(d, n, rng.next_u64()));
            GenericOracle g = generic_oracle(d, n);
            REQUIRE(t.b == g.b);
            REQUIRE(t.beta == g.beta);
            for (long j = 1; j < n; ++j)
                REQUIRE(chern_series(t, j, 2).at(1) ==
                        to_mpz(g.c1[static_cast<size_t>(j)]));
        }
    }
}

TEST_CASE("nonlinear expansions of the degree-2 and degree-3 coefficients") {
    // Everything symbolic over Q[b_1..b_j] with b_0 = 1; a_i = c_1^{(i)}.
    SECTION("j = 2") {
        size_t nv = 2;
        std::vector<MPoly> cs = chern_series_symbolic(2, 3, nv);
        MPoly b1 = devP(nv, 0), b2 = devP(nv, 1);
        MPoly one = MPoly::constant(nv, Rat(1));
        MPoly a0 = one;
        MPoly a1 = b1 - MPoly::constant(nv, Rat(2));
        MPoly a2 = b2 - Rat(2) * b1 + MPoly::constant(nv, Rat(3));
        REQUIRE(cs[1] == a2);
        // 2 c_2 = a_2^2 + 2a_0 - 2a_1 + a_2
        REQUIRE(Rat(2) * cs[2] == a2 * a2 + Rat(2) * a0 - Rat(2) * a1 + a2);
        // 2([c_1]^2 - c_2) = a_2^2 - 2a_0 + 2a_1 - a_2
        REQUIRE(Rat(2) * (cs[1] * cs[1] - cs[2]) ==
                a2 * a2 - Rat(2) * a0 + Rat(2) * a1 - a2);
    }
    SECTION("j = 3") {
        size_t nv = 3;
        std::vector<MPoly> cs = chern_series_symbolic(3, 4, nv);
        MPoly b1 = devP(nv, 0), b2 = devP(nv, 1), b3 = devP(nv, 2);
        MPoly one = MPoly::constant(nv, Rat(1));
        MPoly a0 = one;
        MPoly a1 = b1 - MPoly::constant(nv, Rat(2));
        MPoly a2 = b2 - Rat(2) * b1 + MPoly::constant(nv, Rat(3));
        MPoly a3 = b3 - Rat(2) * b2 + Rat(3) * b1 - MPoly::constant(nv, Rat(4));
        REQUIRE(cs[1] == a3);
        // 2 c_2 = a_3^2 - 2a_0 + 2a_1 - 2a_2 + a_3
        REQUIRE(Rat(2) * cs[2] ==
                a3 * a3 - Rat(2) * a0 + Rat(2) * a1 - Rat(2) * a2 + a3);
        // 6 c_3 = a_3^3 + 6(a_1 a_3 - a_0 a_3 - a_2 a_3) + 3 a_3^2
        //         - 36 a_0 + 24 a_1 - 12 a_2 + 2 a_3
        REQUIRE(Rat(6) * cs[3] ==
                a3 * a3 * a3 + Rat(6) * (a1 * a3 - a0 * a3 - a2 * a3) +
                    Rat(3) * (a3 * a3) - Rat(36) * a0 + Rat(24) * a1 -
                    Rat(12) * a2 + Rat(2) * a3);
        // 6 (c_1 c_2 - c_3) = 2 (a_3^3 + 18a_0 - 12a_1 + 6a_2 - a_3)
        REQUIRE(Rat(6) * (cs[1] * cs[2] - cs[3]) ==
                Rat(2) * (a3 * a3 * a3 + Rat(18) * a0 - Rat(12) * a1 +
                          Rat(6) * a2 - a3));
        // 6 ([c_1]^3 - 2 c_1 c_2 + c_3) =
        //   a_3^3 + 6(a_0 a_3 - a_1 a_3 + a_2 a_3) - 3a_3^2 - 36a_0 + 24a_1 - 12a_2 + 2a_3
        REQUIRE(Rat(6) * (cs[1] * cs[1] * cs[1] - Rat(2) * (cs[1] * cs[2]) + cs[3]) ==
                a3 * a3 * a3 + Rat(6) * (a0 * a3 - a1 * a3 + a2 * a3) -
                    Rat(3) * (a3 * a3) - Rat(36) * a0 + Rat(24) * a1 -
                    Rat(12) * a2 + Rat(2) * a3);
    }
}
