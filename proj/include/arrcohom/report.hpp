#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "arrcohom/aomoto.hpp"
#include "arrcohom/arrangement.hpp"
#include "arrcohom/fixtures.hpp"
#include "arrcohom/matroid.hpp"
#include "arrcohom/positivity.hpp"
#include "arrcohom/resonance.hpp"

namespace arrcohom {

inline constexpr const char* kSchemaVersion = "1";

struct AnalysisConfig {
    std::string input_path;   // arrangement JSON file, or
    std::string generator;    // "generic" | "braid" | named fixture
    long gen_d = 0;
    long gen_n = 0;
    long gen_m = 4;
    uint64_t seed = 42;
    long max_degree = -1;           // cap on i (default: n-1)
    long depth = 2;                 // cap on j
    int membership_samples = 100;   // per (i,j)
    int subspace_budget = 25;       // random points per subspace certificate
    int restriction_retries = 10;
    int propagation_samples = 5;
    int probe_trials = 20;
    std::string format = "text";    // text | json
    std::vector<VecQ> user_seeds;
};

struct ProbeResult {
    std::string name;      // queCod | queInj[i]
    std::string verdict;   // supported | contradicted | inconclusive | consistent | evidence-against
    std::string evidence;
};

/// Owns every stage of one analysis. Build once, query afterwards.
struct AnalysisContext {
    AnalysisConfig config;
    Arrangement input;             // as loaded
    Arrangement arr;               // essentialized working copy
    std::optional<MatroidData> matroid;
    BettiTable table;
    bool indecomposable = false;
    std::optional<ProjectiveModel> pm;
    std::optional<AomotoComplex> complex;
    ComplexReport complex_report;
};

struct FullReport {
    AnalysisConfig config;
    nlohmann::json arrangement_echo;
    BettiTable table;
    bool indecomposable = false;
    std::vector<std::string> notes;
    ComplexReport complex_report;
    std::vector<std::pair<size_t, size_t>> phi_shapes;  // (rows, cols)
    std::vector<ResonanceSummary> resonance;            // all (i,j) in range
    PositivityReport positivity;
    std::vector<ProbeResult> probes;
    PropagationReport propagation;

    bool any_fails() const { return positivity.any_fails(); }
};

inline Arrangement resolve_input(const AnalysisConfig& cfg) {
    if (!cfg.input_path.empty()) return load_arrangement_file(cfg.input_path);
    if (cfg.generator == "generic") {
        if (cfg.gen_d <= 0 || cfg.gen_n <= 0)
            throw InputError("generator generic requires --d and --n");
        return generic_arrangement(static_cast<size_t>(cfg.gen_d),
                                   static_cast<size_t>(cfg.gen_n), cfg.seed);
    }
    if (cfg.generator == "braid")
        return braid_arrangement(static_cast<size_t>(cfg.gen_m));
    if (!cfg.generator.empty()) return named_fixture(cfg.generator);
    throw InputError("no input: pass an arrangement file or a generator name");
}

/// Stage 1: arrangement, lattice, Betti, complex (when applicable).
inline AnalysisContext build_context(const AnalysisConfig& cfg) {
    AnalysisContext ctx;
    ctx.config = cfg;
    ctx.input = resolve_input(cfg);
    ctx.arr = ctx.input.is_essential() ? ctx.input : essentialize(ctx.input);
    ctx.matroid.emplace(ctx.arr);
    ctx.table = betti(ctx.arr, *ctx.matroid);
    ctx.indecomposable = is_indecomposable(ctx.arr, *ctx.matroid, ctx.table);
    if (ctx.indecomposable && ctx.arr.n >= 2) {
        ctx.pm.emplace(ctx.arr, *ctx.matroid, ctx.table);
        ctx.complex = aomoto(*ctx.pm, cfg.seed);
        ctx.complex_report = verify_complex(*ctx.complex, cfg.seed);
    }
    return ctx;
}

namespace detail {

inline QBracket bracket_of(const ResonanceSummary& s) {
    QBracket q;
    q.lower = s.q_lower;
    q.upper = s.q_upper;
    q.provenance = s.bounds.exact ? "exact"
                   : (s.components.empty() ? "theory" : "discovery");
    return q;
}

}  // namespace detail

/// queCod evidence: contradicted by a certified component of codimension
/// <= 1, supported outright for n = 3 (where it is known), otherwise
/// inconclusive with the bracket as evidence.
inline ProbeResult probe_top_codim(const AnalysisContext& ctx,
                                   const ResonanceSummary& top) {
    ProbeResult p;
    p.name = "queCod";
    std::ostringstream ev;
    ev << "q_" << top.i << " in [" << top.q_lower << ", " << top.q_upper << "]";
    if (top.q_upper <= 1) {
        p.verdict = "contradicted";
        ev << "; certified component of dimension " << top.dim_lower;
    } else if (ctx.arr.n == 3) {
        p.verdict = "supported";
        ev << "; known for n = 3, discovery consistent";
    } else {
        p.verdict = "inconclusive";
        ev << "; no component of codimension <= 1 found";
    }
    p.evidence = ev.str();
    return p;
}

inline GateStatus top_gate_from_probe(const ProbeResult& p,
                                      const ResonanceSummary& top) {
    if (p.verdict == "contradicted") return GateStatus::refuted;
    if (p.verdict == "supported" || top.q_lower > 1) return GateStatus::met;
    return GateStatus::unknown;
}

/// The full pipeline behind `analyze`.
inline FullReport run_analysis(const AnalysisConfig& cfg) {
    AnalysisContext ctx = build_context(cfg);
    FullReport rep;
    rep.config = cfg;
    rep.arrangement_echo = arrangement_to_json(ctx.arr);
    rep.arrangement_echo["warnings"] = ctx.arr.warnings;
    rep.arrangement_echo["essentialized"] = ctx.arr.essentialized_from_higher;
    rep.arrangement_echo["original_ambient_dim"] = ctx.input.n;
    rep.table = ctx.table;
    rep.indecomposable = ctx.indecomposable;

    long n = static_cast<long>(ctx.arr.n);
    long d = static_cast<long>(ctx.arr.d());
    rep.positivity.merge(verify_lower_bounds(ctx.table, d, n, ctx.indecomposable));

    if (!ctx.indecomposable) {
        rep.notes.push_back(
            "decomposable arrangement (Crapo invariant beta_{n-1} = 0): "
            "resonance and positivity suites skipped");
        return rep;
    }
    if (!ctx.complex) {
        rep.notes.push_back("ambient dimension too small for a nontrivial complex");
        return rep;
    }
    const AomotoComplex& C = *ctx.complex;
    rep.complex_report = ctx.complex_report;
    for (const MatPoly& phi : C.phi)
        rep.phi_shapes.emplace_back(phi.rows(), phi.cols());

    // Resonance scan over the (i, j) range.
    long imax = (cfg.max_degree >= 0) ? std::min<long>(cfg.max_degree, n - 1) : n - 1;
    DiscoverOptions opt;
    opt.budget = cfg.subspace_budget;
    opt.seed = cfg.seed;
    std::vector<const ResonanceSummary*> prev_level(static_cast<size_t>(imax) + 1,
                                                    nullptr);
    for (long i = 0; i <= imax; ++i) {
        for (long j = 1; j <= cfg.depth; ++j) {
            const ResonanceSummary* prev = nullptr;
            if (i >= 1 && j == 1) {
                for (const ResonanceSummary& s : rep.resonance)
                    if (s.i == static_cast<size_t>(i - 1) && s.j == 1) prev = &s;
            }
            std::vector<VecQ> seeds;
            if (j == 1) seeds = cfg.user_seeds;
            ResonanceSummary sum = discover(C, *ctx.matroid, static_cast<size_t>(i), j,
                                            seeds, prev, opt);
            // Ambient membership scan: random points land in a proper locus
            // with probability zero, so the count distinguishes full-space
            // strata from proper ones and double-checks generic exactness.
            {
                Rng scan(cfg.seed ^ (0xabcdefULL + static_cast<uint64_t>(i) * 37 +
                                     static_cast<uint64_t>(j)));
                int members = 0;
                for (int s = 0; s < cfg.membership_samples; ++s)
                    if (membership(C, scan.next_point(C.nvars))
                            .in_stratum(static_cast<size_t>(i), j))
                        ++members;
                std::ostringstream note;
                note << "ambient scan: " << members << " of " << cfg.membership_samples
                     << " random points in the stratum";
                sum.notes.push_back(note.str());
                if (members == cfg.membership_samples && sum.dim_lower <
                    static_cast<long long>(C.nvars))
                    sum.notes.push_back("stratum appears to be the whole space");
            }
            rep.resonance.push_back(
                codim_report(C, static_cast<size_t>(i), j, std::move(sum)));
        }
    }
    rep.propagation = propagation_check(C, rep.resonance, cfg.propagation_samples,
                                        cfg.seed);

    // Probes.
    const ResonanceSummary* top = nullptr;
    std::vector<QBracket> brackets(static_cast<size_t>(n), QBracket{});
    for (const ResonanceSummary& s : rep.resonance) {
        if (s.j != 1) continue;
        brackets[s.i] = detail::bracket_of(s);
        if (s.i == static_cast<size_t>(n - 2)) top = &s;
    }
    GateStatus top_gate = GateStatus::unknown;
    if (top != nullptr) {
        ProbeResult qc = probe_top_codim(ctx, *top);
        top_gate = top_gate_from_probe(qc, *top);
        rep.probes.push_back(std::move(qc));
    }
    for (long i = 2; i < n; ++i) {
        bool have_brackets = true;
        for (long jj = 0; jj < i; ++jj)
            if (brackets[static_cast<size_t>(jj)].upper < 1) have_brackets = false;
        if (!have_brackets) continue;
        GrassmannProbe gp = grassmann_probe(*ctx.pm, brackets, rep.resonance,
                                            static_cast<size_t>(i), cfg.probe_trials,
                                            cfg.seed);
        ProbeResult p;
        p.name = "queInj[i=" + std::to_string(i) + "]";
        p.verdict = (gp.vanishing_images == 0) ? "consistent" : "evidence-against";
        std::ostringstream ev;
        ev << gp.trials_run << " spanning tuples, " << gp.vanishing_images
           << " vanishing images, " << gp.rejected_samples << " rejected samples";
        p.evidence = ev.str();
        rep.probes.push_back(std::move(p));
        rep.positivity.merge(gp.numeric);
    }

    // Positivity suites with the discovered brackets.
    for (long j = 1; j < n - 1; ++j) {
        GateStatus gate = (j == n - 2) ? top_gate : GateStatus::met;
        rep.positivity.merge(thm_main2_suite(ctx.table, j,
                                             brackets[static_cast<size_t>(j)], n,
                                             ctx.indecomposable, gate));
    }
    if (n == 4 || n == 5) {
        QBracket q2 = brackets.size() > 2 ? brackets[2] : QBracket{};
        QBracket q3 = brackets.size() > 3 ? brackets[3] : QBracket{};
        rep.positivity.merge(b2_b3_bounds(ctx.table, d, n, q2, q3));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Serialization

inline nlohmann::json poly_to_json(const MPoly& p) {
    nlohmann::json terms = nlohmann::json::array();
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        nlohmann::json term = nlohmann::json::array();
        term.push_back(it->second.str());
        term.push_back(it->first);
        terms.push_back(term);
    }
    nlohmann::json j;
    j["terms"] = terms;
    j["str"] = p.str();
    return j;
}

inline nlohmann::json vec_to_json(const VecQ& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const Rat& x : v) a.push_back(x.str());
    return a;
}

inline nlohmann::json betti_to_json(const BettiTable& t) {
    nlohmann::json j;
    j["h"] = t.h;
    j["b"] = t.b;
    j["beta"] = t.beta;
    return j;
}

inline nlohmann::json summary_to_json(const ResonanceSummary& s) {
    nlohmann::json j;
    j["i"] = s.i;
    j["j"] = s.j;
    j["dim_lower"] = s.dim_lower;
    j["q_lower"] = s.q_lower;
    j["q_upper"] = s.q_upper;
    j["q_exact"] = s.bounds.exact;
    nlohmann::json bounds;
    bounds["upper_d"] = s.bounds.upper_d;
    bounds["upper_eagon"] = s.bounds.upper_eagon;
    if (s.bounds.upper_main2d >= 0) bounds["upper_rank"] = s.bounds.upper_main2d;
    bounds["connected_hypothesis"] = s.bounds.connected_hypothesis;
    j["theory_bounds"] = bounds;
    nlohmann::json comps = nlohmann::json::array();
    for (const LinearComponent& c : s.components) {
        nlohmann::json cj;
        cj["dim"] = c.dim;
        cj["provenance"] = c.provenance;
        cj["line_test_points"] = c.line_test_points;
        cj["subspace_samples"] = c.subspace_samples;
        nlohmann::json basis = nlohmann::json::array();
        for (const VecQ& b : c.basis) basis.push_back(vec_to_json(b));
        cj["basis"] = basis;
        comps.push_back(cj);
    }
    j["components"] = comps;
    j["seed"] = s.seed;
    j["notes"] = s.notes;
    return j;
}

inline nlohmann::json positivity_to_json(const PositivityReport& rep) {
    nlohmann::json arr = nlohmann::json::array();
    for (const IneqRecord& r : rep.records) {
        nlohmann::json j;
        j["name"] = r.name;
        j["hypothesis"] = r.hypothesis;
        j["lhs"] = r.lhs;
        j["rhs"] = r.rhs;
        j["verdict"] = r.verdict;
        if (!r.note.empty()) j["note"] = r.note;
        arr.push_back(j);
    }
    return arr;
}

/// The serialized complex: per-degree NBC labels and the polynomial
/// matrices, everything in canonical order.
inline nlohmann::json complex_to_json(const AomotoComplex& C,
                                      const ProjectiveModel& pm) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["nvars"] = C.nvars;
    j["betti"] = betti_to_json(C.betti);
    nlohmann::json degrees = nlohmann::json::array();
    const MatroidData& m = pm.algebra().matroid();
    for (size_t i = 0; i < C.n; ++i) {
        nlohmann::json dj;
        dj["degree"] = i;
        nlohmann::json labels = nlohmann::json::array();
        for (Mask mono : m.nbc(i)) {
            nlohmann::json lbl = nlohmann::json::array();
            for (size_t e : mask_to_set(mono)) lbl.push_back(e + 1);
            labels.push_back(lbl);
        }
        dj["nbc_monomials"] = labels;
        const MatQ& B = pm.projective_basis(i);
        nlohmann::json basis = nlohmann::json::array();
        for (size_t c = 0; c < B.cols(); ++c) basis.push_back(vec_to_json(B.col(c)));
        dj["h_basis"] = basis;
        degrees.push_back(dj);
    }
    j["degrees"] = degrees;
    nlohmann::json mats = nlohmann::json::array();
    for (const MatPoly& phi : C.phi) {
        nlohmann::json mj;
        mj["rows"] = phi.rows();
        mj["cols"] = phi.cols();
        nlohmann::json rows = nlohmann::json::array();
        for (size_t r = 0; r < phi.rows(); ++r) {
            nlohmann::json row = nlohmann::json::array();
            for (size_t c = 0; c < phi.cols(); ++c) row.push_back(poly_to_json(phi(r, c)));
            rows.push_back(row);
        }
        mj["entries"] = rows;
        mats.push_back(mj);
    }
    j["phi"] = mats;
    return j;
}

inline nlohmann::json report_to_json(const FullReport& rep) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["seed"] = rep.config.seed;
    nlohmann::json cfg;
    cfg["depth"] = rep.config.depth;
    cfg["max_degree"] = rep.config.max_degree;
    cfg["membership_samples"] = rep.config.membership_samples;
    cfg["subspace_budget"] = rep.config.subspace_budget;
    nlohmann::json us = nlohmann::json::array();
    for (const VecQ& v : rep.config.user_seeds) us.push_back(vec_to_json(v));
    cfg["user_seed_vectors"] = us;
    j["config"] = cfg;
    j["arrangement"] = rep.arrangement_echo;
    j["betti"] = betti_to_json(rep.table);
    j["indecomposable"] = rep.indecomposable;
    j["notes"] = rep.notes;
    if (!rep.phi_shapes.empty()) {
        nlohmann::json cj;
        nlohmann::json shapes = nlohmann::json::array();
        for (auto [r, c] : rep.phi_shapes) shapes.push_back({r, c});
        cj["phi_shapes"] = shapes;
        nlohmann::json ranks = nlohmann::json::array();
        for (auto [i, r] : rep.complex_report.generic_ranks) ranks.push_back({i, r});
        cj["generic_ranks"] = ranks;
        cj["certified"] = rep.complex_report.ok;
        j["aomoto_digest"] = cj;
    }
    nlohmann::json res = nlohmann::json::array();
    for (const ResonanceSummary& s : rep.resonance) res.push_back(summary_to_json(s));
    j["resonance"] = res;
    j["positivity"] = positivity_to_json(rep.positivity);
    nlohmann::json probes = nlohmann::json::array();
    for (const ProbeResult& p : rep.probes) {
        nlohmann::json pj;
        pj["name"] = p.name;
        pj["verdict"] = p.verdict;
        pj["evidence"] = p.evidence;
        probes.push_back(pj);
    }
    j["probes"] = probes;
    nlohmann::json prop;
    prop["points_checked"] = rep.propagation.points_checked;
    prop["components_checked"] = rep.propagation.components_checked;
    prop["skipped_levels"] = rep.propagation.skipped_levels;
    prop["ok"] = rep.propagation.ok;
    j["propagation"] = prop;
    return j;
}

inline std::string report_to_text(const FullReport& rep) {
    std::ostringstream os;
    os << "arrangement: " << rep.arrangement_echo["name"].get<std::string>()
       << "  (d = " << rep.arrangement_echo["hyperplanes"].size()
       << ", n = " << rep.arrangement_echo["ambient_dim"].get<size_t>() << ")\n";
    for (const auto& w : rep.arrangement_echo["warnings"])
        os << "  warning: " << w.get<std::string>() << "\n";
    auto join = [](const std::vector<long long>& v) {
        std::ostringstream s;
        for (size_t i = 0; i < v.size(); ++i) s << (i ? ", " : "") << v[i];
        return s.str();
    };
    os << "h    = (" << join(rep.table.h) << ")\n";
    os << "b    = (" << join(rep.table.b) << ")\n";
    os << "beta = (" << join(rep.table.beta) << ")\n";
    os << "indecomposable: " << (rep.indecomposable ? "yes" : "no") << "\n";
    for (const std::string& nte : rep.notes) os << "note: " << nte << "\n";
    if (!rep.phi_shapes.empty()) {
        os << "complex: ";
        for (size_t i = 0; i < rep.phi_shapes.size(); ++i)
            os << (i ? ", " : "") << "phi_" << i << " " << rep.phi_shapes[i].first
               << "x" << rep.phi_shapes[i].second;
        os << (rep.complex_report.ok ? "  [certified]" : "  [FAILED]") << "\n";
    }
    for (const ResonanceSummary& s : rep.resonance) {
        os << "R^" << s.i << "_" << s.j << ": " << s.components.size()
           << " component(s)";
        if (!s.components.empty()) {
            os << " dims(";
            for (size_t k = 0; k < s.components.size(); ++k)
                os << (k ? "," : "") << s.components[k].dim;
            os << ")";
        }
        os << ", q in [" << s.q_lower << ", " << s.q_upper << "]"
           << (s.bounds.exact ? " exact" : "") << "\n";
    }
    if (rep.propagation.points_checked > 0)
        os << "propagation: " << rep.propagation.points_checked
           << " points checked, ok\n";
    for (const ProbeResult& p : rep.probes)
        os << p.name << ": " << p.verdict << " (" << p.evidence << ")\n";
    os << "positivity ledger:\n";
    for (const IneqRecord& r : rep.positivity.records) {
        os << "  " << r.name << ": " << r.verdict;
        if (!r.lhs.empty()) os << "  [" << r.lhs << " vs " << r.rhs << "]";
        if (!r.note.empty()) os << "  (" << r.note << ")";
        if (r.verdict == "hypothesis-not-met") os << "  {" << r.hypothesis << "}";
        os << "\n";
    }
    return os.str();
}

/// Exit-code contract: 0 clean, 2 input errors (thrown before this point),
/// 3 when any certified inequality fails or a consistency check broke.
inline int exit_code_for(const FullReport& rep) {
    if (!rep.complex_report.ok && !rep.phi_shapes.empty()) return 3;
    if (rep.any_fails()) return 3;
    return 0;
}

}  // namespace arrcohom
