#ifndef FJPOL_COMMANDS_HPP
#define FJPOL_COMMANDS_HPP

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fjpol/candidates.hpp"
#include "fjpol/conditions.hpp"
#include "fjpol/graph.hpp"
#include "fjpol/metrics.hpp"
#include "fjpol/models.hpp"
#include "fjpol/report.hpp"
#include "fjpol/rng.hpp"
#include "fjpol/spectral.hpp"

namespace fjpol {

struct RunConfig {
    std::string graph_path;
    bool directed = false;
    Variant variant = Variant::Gfj;
    std::string lambda_spec = "const:0.8"; // const:<c> | pagerank | pagerank-inv | file:<path>
    double epsilon = 0.01;
    std::vector<std::string> candidates = {"all"};
    std::uint64_t seed = 0;
    std::string out_dir = ".";
    std::string format = "csv"; // csv | json
    bool dump_matrices = false;
};

// In-memory command result: file name -> content, plus a human summary.
// Fixed seed and config give byte-identical content.
struct CommandOutput {
    std::map<std::string, std::string> files;
    std::string summary;
};

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace detail

// The loaded graph plus the configured model; enough for the subcommands
// that never touch the steady state (simulate, conditions).
struct GraphContext {
    SocialGraph graph;
    ModelConfig cfg;
    ModelConfig mapped;   // generalized form (identity for gfj)

    const InfluenceMatrix& influence() const { return mapped.w; }
    std::size_t size() const { return graph.n; }
};

// Full context with the response matrix and its spectral basis.
struct AnalysisContext : GraphContext {
    ResponseMatrix h;
    SpectralBasis basis;
};

inline SusceptibilityProfile resolve_lambda(const RunConfig& rc, const SocialGraph& g) {
    const std::string& spec = rc.lambda_spec;
    if (spec.rfind("const:", 0) == 0) {
        double c = 0.0;
        try {
            std::size_t pos = 0;
            c = std::stod(spec.substr(6), &pos);
            if (pos != spec.size() - 6) throw std::invalid_argument(spec);
        } catch (const std::exception&) {
            throw ValidationError("bad susceptibility constant in '" + spec + "'");
        }
        return build_susceptibility(Vec(g.n, 1.0), SusceptibilityScheme::Constant, rc.epsilon, c);
    }
    if (spec == "pagerank" || spec == "pagerank-inv") {
        const Vec pr = pagerank(g);
        const auto scheme = spec == "pagerank" ? SusceptibilityScheme::PageRankProportional
                                               : SusceptibilityScheme::PageRankInverse;
        return build_susceptibility(pr, scheme, rc.epsilon);
    }
    if (spec.rfind("file:", 0) == 0) {
        std::ifstream in(spec.substr(5));
        if (!in) throw IoError("cannot open " + spec.substr(5));
        return load_susceptibility_file(in, g.n);
    }
    throw ValidationError("unknown susceptibility spec '" + spec + "'");
}

inline GraphContext make_graph_context(const RunConfig& rc) {
    std::ifstream in(rc.graph_path);
    if (!in) throw IoError("cannot open " + rc.graph_path);
    EdgeListFormat fmt;
    fmt.directed = rc.directed;
    GraphContext ctx;
    ctx.graph = load_edge_list(in, fmt);
    switch (rc.variant) {
        case Variant::Gfj:
            ctx.cfg = ModelConfig::gfj(row_normalize(ctx.graph), resolve_lambda(rc, ctx.graph));
            break;
        case Variant::Vfj:
            ctx.cfg = ModelConfig::vfj(ctx.graph);
            break;
        case Variant::Rfj:
            ctx.cfg = ModelConfig::rfj(ctx.graph);
            break;
    }
    ctx.mapped = map_vfj_to_gfj(ctx.cfg);
    return ctx;
}

inline AnalysisContext make_context(const RunConfig& rc) {
    AnalysisContext ctx;
    static_cast<GraphContext&>(ctx) = make_graph_context(rc);
    ctx.h = build_response_matrix(ctx.cfg);
    ctx.basis = spectral_basis(ctx.h);
    return ctx;
}

namespace detail {

inline bool wants(const std::vector<std::string>& list, const std::string& name) {
    for (const std::string& c : list)
        if (c == "all" || c == name) return true;
    return false;
}

inline void validate_candidate_names(const std::vector<std::string>& list) {
    static const char* known[] = {"all",   "b2_1",    "b2_t", "v_gt1",
                                  "v_ge1", "heu",     "max_p23", "b1_1",
                                  "max_p4", "unif"};
    for (const std::string& c : list) {
        bool ok = false;
        for (const char* k : known) ok = ok || c == k;
        if (!ok) throw ValidationError("unknown candidate '" + c + "'");
    }
}

} // namespace detail

// All requested prejudice constructions, in report order.
inline std::vector<Candidate> compute_candidates(const AnalysisContext& ctx,
                                                 const std::vector<std::string>& which,
                                                 std::uint64_t seed) {
    std::vector<Candidate> out;
    auto add = [&](Candidate c) { out.push_back(std::move(c)); };

    std::vector<Vec> seeds; // feasible points that seed the global search
    Candidate b2_1 = candidate_b2_1(ctx.h, ctx.basis);
    Candidate b2_t = candidate_b2_t(ctx.h, ctx.basis);
    if (detail::wants(which, "b2_1")) add(b2_1);
    if (detail::wants(which, "b2_t")) add(b2_t);
    if (b2_t.status == CandidateStatus::Ok) seeds.push_back(b2_t.s);

    OptimOptions opt;
    opt.seed = seed + 1;
    if (detail::wants(which, "v_gt1")) {
        Candidate c = candidate_subspace_qp(ctx.h, ctx.basis, SubspaceMode::StrictlyGreater, opt);
        if (c.status == CandidateStatus::Ok) seeds.push_back(c.s);
        add(std::move(c));
    }
    if (detail::wants(which, "v_ge1")) {
        Candidate c = candidate_subspace_qp(ctx.h, ctx.basis, SubspaceMode::GreaterOrEqual, opt);
        if (c.status == CandidateStatus::Ok) seeds.push_back(c.s);
        add(std::move(c));
    }
    if (detail::wants(which, "heu")) {
        Candidate c = heuristic_v_gt1(ctx.h, ctx.basis);
        if (c.status == CandidateStatus::Ok) seeds.push_back(c.s);
        add(std::move(c));
    }
    if (detail::wants(which, "max_p23"))
        add(global_p23_search(ctx.h, 12, 12, seeds, seed + 2));
    if (detail::wants(which, "b1_1")) add(candidate_b1_1(ctx.h));
    if (detail::wants(which, "max_p4")) add(candidate_lp_p4(ctx.h, ctx.basis));
    return out;
}

inline Vec uniform_baseline(std::size_t n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    Vec s(n);
    for (double& v : s) v = rng.next_double();
    return s;
}

inline TableRow make_row(const AnalysisContext& ctx, const std::string& name, const Vec& s) {
    const OpinionVector prejudice(s);
    const OpinionVector z = steady_state(ctx.h, prejudice);
    return {name, shift_report(prejudice, z, ctx.influence(), ctx.graph.edges)};
}

inline CommandOutput cmd_analyze(const RunConfig& rc) {
    detail::validate_candidate_names(rc.candidates);
    const AnalysisContext ctx = make_context(rc);
    CommandOutput out;

    std::vector<Candidate> cands = compute_candidates(ctx, rc.candidates, rc.seed);
    std::vector<TableRow> rows;
    rows.push_back(make_row(ctx, "unif", uniform_baseline(ctx.size(), rc.seed)));
    for (const Candidate& c : cands)
        if (c.status == CandidateStatus::Ok) rows.push_back(make_row(ctx, c.name, c.s));

    if (rc.format == "json") out.files["table.json"] = delta_table_json(rows, ctx.size());
    else out.files["table.csv"] = delta_table_csv(rows, ctx.size());

    const std::vector<ConditionVerdict> verdicts = condition_report(ctx.cfg);
    out.files["conditions.json"] = verdicts_json(verdicts);
    out.files["candidates.json"] = candidates_json(cands, rows);
    if (rc.dump_matrices) {
        out.files["W.csv"] = matrix_csv(ctx.influence().w);
        out.files["H.csv"] = matrix_csv(ctx.h.h);
    }

    std::ostringstream sum;
    sum << "analyze: n=" << ctx.size() << " variant=" << variant_name(rc.variant)
        << " candidates=" << cands.size() << "\n";
    for (const ConditionVerdict& v : verdicts)
        if (!v.note.empty() && v.verdict == Verdict::Depolarizing &&
            v.metric_class == MetricClass::Absolute)
            sum << "NEVER POLARIZING: " << v.note << "\n";
    out.summary = sum.str();
    return out;
}

inline CommandOutput cmd_conditions(const RunConfig& rc) {
    const GraphContext ctx = make_graph_context(rc);
    CommandOutput out;
    out.files["conditions.json"] = verdicts_json(condition_report(ctx.cfg));
    out.summary = "conditions: n=" + std::to_string(ctx.size()) + "\n";
    return out;
}

inline CommandOutput cmd_arrows(const RunConfig& rc, const std::string& candidate) {
    if (candidate == "all") throw ValidationError("arrows needs one concrete candidate");
    detail::validate_candidate_names({candidate});
    const AnalysisContext ctx = make_context(rc);
    Vec s;
    if (candidate == "unif") {
        s = uniform_baseline(ctx.size(), rc.seed);
    } else {
        for (Candidate& c : compute_candidates(ctx, {candidate}, rc.seed)) {
            if (c.name == candidate && c.status == CandidateStatus::Ok) s = std::move(c.s);
            else if (c.name == candidate)
                throw ValidationError("candidate '" + candidate + "' is " + c.note);
        }
        if (s.empty()) throw ValidationError("unknown candidate '" + candidate + "'");
    }
    const OpinionVector prejudice(s);
    const OpinionVector z = steady_state(ctx.h, prejudice);

    std::string csv = "node,prejudice,final,lambda\n";
    double mean_s = 0.0, mean_z = 0.0;
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        csv += std::to_string(i) + ',' + csv_num(prejudice[i]) + ',' + csv_num(z[i]) + ',' +
               csv_num(ctx.mapped.lambdas.lambdas[i]) + '\n';
        mean_s += prejudice[i];
        mean_z += z[i];
    }
    mean_s /= static_cast<double>(ctx.size());
    mean_z /= static_cast<double>(ctx.size());
    csv += "mean_initial," + csv_num(mean_s) + ",,\n";
    csv += "mean_final,," + csv_num(mean_z) + ",\n";

    CommandOutput out;
    out.files["arrows_" + candidate + ".csv"] = csv;
    out.summary = "arrows: candidate=" + candidate + "\n";
    return out;
}

// Per-step trajectory of z(k+1) = (I - Λ) s + Λ W z(k). Runs even for
// configurations whose convergence is not certified; the last row carries
// the converged flag.
inline CommandOutput cmd_simulate(const RunConfig& rc, const std::string& opinion_path,
                                  int steps, double tol = 1e-10) {
    const GraphContext ctx = make_graph_context(rc);
    const std::size_t n = ctx.size();

    std::ifstream in(opinion_path);
    if (!in) throw IoError("cannot open " + opinion_path);
    Vec s(n, 0.0);
    std::vector<bool> seen(n, false);
    std::string line;
    long line_no = 0;
    std::size_t sequential = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        const auto fields = detail::split_fields(line);
        if (fields.empty()) continue;
        std::size_t idx;
        std::string tok;
        if (fields.size() == 2) {
            idx = static_cast<std::size_t>(detail::parse_node(fields[0], line_no));
            tok = fields[1];
        } else if (fields.size() == 1) {
            idx = sequential++;
            tok = fields[0];
        } else {
            throw ParseError("expected 'value' or 'index value'", line_no);
        }
        if (idx >= n)
            throw ValidationError("line " + std::to_string(line_no) + ": index out of range");
        if (seen[idx])
            throw ValidationError("line " + std::to_string(line_no) + ": duplicate opinion");
        seen[idx] = true;
        s[idx] = detail::parse_weight(tok, line_no);
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!seen[i]) throw ValidationError("opinion file misses node " + std::to_string(i));
    const OpinionVector prejudice(s);

    const Vec& lam = ctx.mapped.lambdas.lambdas;
    Vec z = prejudice.values();
    std::string csv = "step,converged";
    for (std::size_t i = 0; i < n; ++i) csv += ",z" + std::to_string(i);
    csv += '\n';
    auto emit = [&](int step, bool converged) {
        csv += std::to_string(step);
        csv += converged ? ",1" : ",0";
        for (std::size_t i = 0; i < n; ++i) {
            csv += ',';
            csv += csv_num(z[i]);
        }
        csv += '\n';
    };
    emit(0, false);
    bool converged = false;
    int step = 0;
    while (step < steps && !converged) {
        Vec zn(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double* row = ctx.mapped.w.w.row(i);
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) acc += row[j] * z[j];
            zn[i] = (1.0 - lam[i]) * prejudice[i] + lam[i] * acc;
        }
        converged = max_abs_diff(zn, z) <= tol;
        z.swap(zn);
        ++step;
        emit(step, converged);
    }

    CommandOutput out;
    out.files["trajectory.csv"] = csv;
    out.summary = converged
                      ? "simulate: converged after " + std::to_string(step) + " steps\n"
                      : "simulate: WARNING not converged within " + std::to_string(steps) +
                            " steps (partial trajectory written)\n";
    return out;
}

inline CommandOutput cmd_dump_matrices(const RunConfig& rc) {
    const AnalysisContext ctx = make_context(rc);
    CommandOutput out;
    out.files["W.csv"] = matrix_csv(ctx.influence().w);
    out.files["H.csv"] = matrix_csv(ctx.h.h);
    out.summary = "dump-matrices: n=" + std::to_string(ctx.size()) + "\n";
    return out;
}

} // namespace fjpol

#endif // FJPOL_COMMANDS_HPP
