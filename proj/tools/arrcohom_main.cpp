// Command-line front end: exact Orlik-Solomon cohomology, resonance loci and
// positivity checks for rational hyperplane arrangements.

#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "arrcohom/report.hpp"

using namespace arrcohom;

namespace {

VecQ parse_vector(const std::string& csv) {
    VecQ v;
    std::string cur;
    for (char ch : csv + ",") {
        if (ch == ',') {
            if (!cur.empty()) v.push_back(Rat::parse(cur));
            cur.clear();
        } else if (!isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    if (v.empty()) throw InputError("empty vector literal");
    return v;
}

struct CommonArgs {
    std::string input;
    long d = 0, n = 0, m = 4;
    uint64_t seed = 42;
    long max_degree = -1;
    long depth = 2;
    int samples = 100;
    std::string format = "text";
    std::vector<std::string> user_seeds;

    AnalysisConfig to_config() const {
        AnalysisConfig cfg;
        if (input == "generic" || input == "braid" || input == "decomposable" ||
            input == "two-triples" || input == "braid-essential") {
            cfg.generator = input;
        } else {
            cfg.input_path = input;
        }
        cfg.gen_d = d;
        cfg.gen_n = n;
        cfg.gen_m = m;
        cfg.seed = seed;
        cfg.max_degree = max_degree;
        cfg.depth = depth;
        cfg.membership_samples = samples;
        cfg.format = format;
        for (const std::string& s : user_seeds) cfg.user_seeds.push_back(parse_vector(s));
        return cfg;
    }
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("input", args.input,
                    "arrangement JSON file, or generator: generic | braid | "
                    "decomposable | two-triples | braid-essential")
        ->required();
    cmd->add_option("--d", args.d, "degree for the generic generator");
    cmd->add_option("--n", args.n, "ambient dimension for the generic generator");
    cmd->add_option("--m", args.m, "braid generator size (default 4)");
    cmd->add_option("--seed", args.seed, "RNG seed (recorded in every output)");
    cmd->add_option("--max-degree", args.max_degree, "cap on the cohomological degree i");
    cmd->add_option("--depth", args.depth, "cap on the jump depth j (default 2)");
    cmd->add_option("--samples", args.samples, "membership sample count (default 100)");
    cmd->add_option("--format", args.format, "text | json");
    cmd->add_option("--user-seed-vector", args.user_seeds,
                    "extra component seed, comma-separated rationals (repeatable)");
}

int emit_report(const FullReport& rep, const std::string& format) {
    if (format == "json")
        std::cout << report_to_json(rep).dump(2) << "\n";
    else
        std::cout << report_to_text(rep);
    return exit_code_for(rep);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact cohomology, resonance and positivity for hyperplane arrangements"};
    app.require_subcommand(1);

    CommonArgs analyze_args, betti_args, eq_args, mem_args, res_args, bounds_args,
        schur_args, conj_args;
    long eq_i = 1, eq_j = 1;
    bool eq_reduced = false;
    bool eq_complex = false;
    long eq_col = 1;
    std::string mem_vector;
    long schur_j = 1, schur_q = 0;

    CLI::App* c_analyze = app.add_subcommand("analyze", "full pipeline report");
    add_common(c_analyze, analyze_args);
    CLI::App* c_betti = app.add_subcommand("betti", "Whitney numbers and Betti tables");
    add_common(c_betti, betti_args);
    CLI::App* c_eq = app.add_subcommand("equations", "determinantal equations of R^i_j");
    add_common(c_eq, eq_args);
    c_eq->add_option("--degree", eq_i, "cohomological degree i (default 1)");
    c_eq->add_option("--jump", eq_j, "jump depth j (default 1)");
    c_eq->add_flag("--reduced", eq_reduced, "column-reduced equations for R^1");
    c_eq->add_option("--col", eq_col, "column to delete for --reduced (1-based)");
    c_eq->add_flag("--complex-json", eq_complex, "dump the full complex as JSON");
    CLI::App* c_mem = app.add_subcommand("membership", "cohomology dims at a point");
    add_common(c_mem, mem_args);
    c_mem->add_option("--vector", mem_vector, "point in H^1 coordinates, comma-separated")
        ->required();
    CLI::App* c_res = app.add_subcommand("resonance", "component discovery summary");
    add_common(c_res, res_args);
    CLI::App* c_bounds = app.add_subcommand("bounds", "Whitney-number lower bounds");
    add_common(c_bounds, bounds_args);
    CLI::App* c_schur = app.add_subcommand("schur", "Chern coefficients and Schur values");
    add_common(c_schur, schur_args);
    c_schur->add_option("--degree", schur_j, "series degree j (default 1)");
    c_schur->add_option("--q", schur_q, "override truncation codimension");
    CLI::App* c_conj = app.add_subcommand("conjectures", "evidence probes only");
    add_common(c_conj, conj_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        auto t0 = std::chrono::steady_clock::now();
        int rc = 0;
        if (c_analyze->parsed()) {
            AnalysisConfig cfg = analyze_args.to_config();
            FullReport rep = run_analysis(cfg);
            rc = emit_report(rep, cfg.format);
        } else if (c_betti->parsed()) {
            AnalysisConfig cfg = betti_args.to_config();
            AnalysisContext ctx = build_context(cfg);
            if (cfg.format == "json") {
                nlohmann::json j;
                j["schema_version"] = kSchemaVersion;
                j["arrangement"] = arrangement_to_json(ctx.arr);
                j["betti"] = betti_to_json(ctx.table);
                j["indecomposable"] = ctx.indecomposable;
                std::cout << j.dump(2) << "\n";
            } else {
                auto join = [](const std::vector<long long>& v) {
                    std::ostringstream s;
                    for (size_t i = 0; i < v.size(); ++i) s << (i ? ", " : "") << v[i];
                    return s.str();
                };
                std::cout << "h    = (" << join(ctx.table.h) << ")\n"
                          << "b    = (" << join(ctx.table.b) << ")\n"
                          << "beta = (" << join(ctx.table.beta) << ")\n"
                          << "indecomposable: " << (ctx.indecomposable ? "yes" : "no")
                          << "\n";
            }
        } else if (c_eq->parsed()) {
            AnalysisConfig cfg = eq_args.to_config();
            AnalysisContext ctx = build_context(cfg);
            if (!ctx.complex)
                throw InputError("equations: arrangement is decomposable or too small");
            if (eq_complex) {
                std::cout << complex_to_json(*ctx.complex, *ctx.pm).dump(2) << "\n";
            } else {
                std::vector<MPoly> polys =
                    eq_reduced ? reduced_equations(*ctx.complex, static_cast<size_t>(eq_col))
                               : fitting_equations(*ctx.complex, static_cast<size_t>(eq_i),
                                                   eq_j);
                if (cfg.format == "json") {
                    nlohmann::json j;
                    j["schema_version"] = kSchemaVersion;
                    j["count"] = polys.size();
                    nlohmann::json arr = nlohmann::json::array();
                    for (const MPoly& p : polys) arr.push_back(poly_to_json(p));
                    j["equations"] = arr;
                    std::cout << j.dump(2) << "\n";
                } else {
                    std::cout << polys.size() << " equation(s)\n";
                    for (const MPoly& p : polys) std::cout << p.str() << "\n";
                }
            }
        } else if (c_mem->parsed()) {
            AnalysisConfig cfg = mem_args.to_config();
            AnalysisContext ctx = build_context(cfg);
            if (!ctx.complex)
                throw InputError("membership: arrangement is decomposable or too small");
            MembershipResult res = membership(*ctx.complex, parse_vector(mem_vector));
            if (cfg.format == "json") {
                nlohmann::json j;
                j["schema_version"] = kSchemaVersion;
                j["point"] = vec_to_json(res.point);
                j["dims"] = res.dims;
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "dims = (";
                for (size_t i = 0; i < res.dims.size(); ++i)
                    std::cout << (i ? ", " : "") << res.dims[i];
                std::cout << ")\n";
                for (size_t i = 0; i < res.dims.size(); ++i)
                    if (res.dims[i] > 0)
                        std::cout << "in R^" << i << "_j for j <= " << res.dims[i] << "\n";
            }
        } else if (c_res->parsed() || c_conj->parsed() || c_bounds->parsed()) {
            CommonArgs& a = c_res->parsed()   ? res_args
                            : c_conj->parsed() ? conj_args
                                               : bounds_args;
            AnalysisConfig cfg = a.to_config();
            FullReport rep = run_analysis(cfg);
            if (c_res->parsed()) {
                if (cfg.format == "json") {
                    nlohmann::json j;
                    j["schema_version"] = kSchemaVersion;
                    j["seed"] = cfg.seed;
                    nlohmann::json arr = nlohmann::json::array();
                    for (const ResonanceSummary& s : rep.resonance)
                        arr.push_back(summary_to_json(s));
                    j["resonance"] = arr;
                    std::cout << j.dump(2) << "\n";
                } else {
                    for (const ResonanceSummary& s : rep.resonance) {
                        std::cout << "R^" << s.i << "_" << s.j << ": "
                                  << s.components.size() << " component(s), q in ["
                                  << s.q_lower << ", " << s.q_upper << "]\n";
                        for (const LinearComponent& c : s.components) {
                            std::cout << "  dim " << c.dim << " [" << c.provenance
                                      << "] basis:";
                            for (const VecQ& b : c.basis) {
                                std::cout << " (";
                                for (size_t q = 0; q < b.size(); ++q)
                                    std::cout << (q ? "," : "") << b[q].str();
                                std::cout << ")";
                            }
                            std::cout << "\n";
                        }
                    }
                }
            } else if (c_conj->parsed()) {
                if (cfg.format == "json") {
                    nlohmann::json j;
                    j["schema_version"] = kSchemaVersion;
                    nlohmann::json arr = nlohmann::json::array();
                    for (const ProbeResult& p : rep.probes) {
                        nlohmann::json pj;
                        pj["name"] = p.name;
                        pj["verdict"] = p.verdict;
                        pj["evidence"] = p.evidence;
                        arr.push_back(pj);
                    }
                    j["probes"] = arr;
                    std::cout << j.dump(2) << "\n";
                } else {
                    for (const ProbeResult& p : rep.probes)
                        std::cout << p.name << ": " << p.verdict << " (" << p.evidence
                                  << ")\n";
                }
            } else {
                if (cfg.format == "json") {
                    nlohmann::json j;
                    j["schema_version"] = kSchemaVersion;
                    j["positivity"] = positivity_to_json(rep.positivity);
                    std::cout << j.dump(2) << "\n";
                } else {
                    for (const IneqRecord& r : rep.positivity.records) {
                        std::cout << r.name << ": " << r.verdict;
                        if (!r.lhs.empty())
                            std::cout << "  [" << r.lhs << " vs " << r.rhs << "]";
                        std::cout << "\n";
                    }
                }
            }
            rc = exit_code_for(rep);
        } else if (c_schur->parsed()) {
            AnalysisConfig cfg = schur_args.to_config();
            FullReport rep = run_analysis(cfg);
            long n = static_cast<long>(rep.table.b.size());
            if (!(0 < schur_j && schur_j < n))
                throw InputError("schur: need 0 < j < n");
            QBracket q;
            for (const ResonanceSummary& s : rep.resonance)
                if (s.i == static_cast<size_t>(schur_j) && s.j == 1) {
                    q.lower = s.q_lower;
                    q.upper = s.q_upper;
                }
            long q_used = (schur_q > 0) ? schur_q : std::max<long>(1, static_cast<long>(q.lower));
            ChernSeries cs = chern_series(rep.table, schur_j, q_used,
                                          schur_q > 0 ? "pinned" : "theory-lower-bound");
            if (cfg.format == "json") {
                nlohmann::json j;
                j["schema_version"] = kSchemaVersion;
                j["j"] = cs.j;
                j["q_used"] = cs.q_used;
                j["q_provenance"] = cs.q_provenance;
                nlohmann::json coeffs = nlohmann::json::array();
                for (const mpz_class& c : cs.coeffs) coeffs.push_back(c.get_str());
                j["coeffs"] = coeffs;
                nlohmann::json sv = nlohmann::json::array();
                for (const SchurValue& v : schur_values(cs, cs.q_used - 1)) {
                    nlohmann::json vj;
                    vj["partition"] = v.partition;
                    vj["value"] = v.value.get_str();
                    sv.push_back(vj);
                }
                j["schur_values"] = sv;
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "c^(" << cs.j << ") truncated below q = " << cs.q_used
                          << " [" << cs.q_provenance << "]: (";
                for (size_t k = 0; k < cs.coeffs.size(); ++k)
                    std::cout << (k ? ", " : "") << cs.coeffs[k].get_str();
                std::cout << ")\n";
                for (const SchurValue& v : schur_values(cs, cs.q_used - 1))
                    std::cout << "schur" << partition_str(v.partition) << " = "
                              << v.value.get_str() << "\n";
            }
            rc = exit_code_for(rep);
        }
        auto t1 = std::chrono::steady_clock::now();
        std::cerr << "elapsed: "
                  << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()
                  << " ms\n";
        return rc;
    } catch (const InternalError& e) {
        std::cerr << "internal consistency failure: " << e.what() << "\n";
        return 3;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
