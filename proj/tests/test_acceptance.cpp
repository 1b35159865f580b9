// Acceptance suite: end-to-end reproduction of the documented reference
// values plus the randomized property batteries. Prints one PASS/FAIL line
// per criterion; doctest assertions mirror every sub-check.

#include "doctest.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "fjpol/candidates.hpp"
#include "fjpol/commands.hpp"
#include "fjpol/conditions.hpp"

#include "test_support.hpp"

using namespace fjpol;
using namespace fjpol::testing;

namespace {

struct Check {
    std::string name;
    bool ok;
    std::string detail;
};

struct Criterion {
    std::vector<Check> checks;

    void add(const std::string& name, bool ok, const std::string& detail = "") {
        checks.push_back({name, ok, detail});
    }
    void near(const std::string& name, double got, double want, double tol) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "got %.6g want %.6g (tol %.1g)", got, want, tol);
        add(name, std::abs(got - want) <= tol, buf);
    }
    void below(const std::string& name, double got, double bound) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "got %.6g bound %.6g", got, bound);
        add(name, got <= bound, buf);
    }
    bool all_ok() const {
        for (const Check& c : checks)
            if (!c.ok) return false;
        return true;
    }
};

void report(int number, const std::string& title, Criterion& crit, double seconds) {
    std::printf("[acceptance] criterion %d (%s): %s (%.2fs)\n", number, title.c_str(),
                crit.all_ok() ? "PASS" : "FAIL", seconds);
    for (const Check& c : crit.checks) {
        if (!c.ok) std::printf("    FAIL %s: %s\n", c.name.c_str(), c.detail.c_str());
        INFO(c.name, ": ", c.detail);
        CHECK(c.ok);
    }
    std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ModelConfig four_node_config() {
    SocialGraph g;
    g.n = 4;
    g.directed = true;
    g.edges = {{0, 1, 4.0}, {0, 3, 1.0}, {1, 0, 1.0}, {1, 3, 3.0},
               {2, 0, 4.0}, {2, 1, 1.0}, {3, 2, 8.0}};
    g.self_weights = Vec{1.0, 8.0, 1.0, 1.0};
    return ModelConfig::gfj(row_normalize(g),
                            SusceptibilityProfile::explicit_profile({0.9, 0.1, 0.1, 0.5}));
}

ModelConfig triangle_config() {
    Mat w(3, 3);
    w(0, 1) = w(0, 2) = 0.5;
    w(1, 0) = w(1, 2) = 0.5;
    w(2, 0) = w(2, 1) = 0.5;
    return ModelConfig::gfj(InfluenceMatrix::from_matrix(w),
                            SusceptibilityProfile::explicit_profile({1.0, 0.5, 0.0}));
}

ModelConfig stub_config(double l0) {
    SocialGraph g;
    g.n = 3;
    g.directed = true;
    g.edges = {{0, 1, 0.2}, {0, 2, 0.3}, {1, 0, 0.2}, {1, 2, 0.6}, {2, 0, 0.3}, {2, 1, 0.6}};
    return ModelConfig::gfj(row_normalize(g),
                            SusceptibilityProfile::explicit_profile({l0, 0.5, 0.5}));
}

std::vector<Edge> arcs_of(const InfluenceMatrix& w) {
    std::vector<Edge> e;
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = 0; j < w.size(); ++j)
            if (i != j && w.w(i, j) > 0.0) e.push_back({i, j, w.w(i, j)});
    return e;
}

const std::string kKarate = std::string(FJPOL_DATA_DIR) + "/karate.edges";

SocialGraph load_karate() {
    std::ifstream in(kKarate);
    REQUIRE(in.good());
    return load_edge_list(in);
}

// Deterministic preferential-attachment graph for the large smoke run.
SocialGraph smoke_graph(std::size_t n, std::size_t m, std::uint64_t seed) {
    SplitMix64 rng(seed);
    SocialGraph g;
    g.n = n;
    g.directed = false;
    std::vector<std::size_t> chances;
    auto connect = [&](std::size_t a, std::size_t b) {
        g.edges.push_back({a, b, 1.0});
        g.edges.push_back({b, a, 1.0});
        chances.push_back(a);
        chances.push_back(b);
    };
    for (std::size_t i = 0; i <= m; ++i)
        for (std::size_t j = i + 1; j <= m; ++j) connect(i, j);
    for (std::size_t v = m + 1; v < n; ++v) {
        std::vector<std::size_t> targets;
        while (targets.size() < m) {
            const std::size_t t = chances[rng.next_below(chances.size())];
            bool dup = false;
            for (std::size_t u : targets) dup = dup || u == t;
            if (!dup) targets.push_back(t);
        }
        for (std::size_t t : targets) connect(v, t);
    }
    return g;
}

} // namespace

TEST_CASE("criterion 1: four-node reference reproduction") {
    const auto t0 = std::chrono::steady_clock::now();
    Criterion crit;

    ModelConfig cfg = four_node_config();
    ResponseMatrix h = build_response_matrix(cfg);
    const double href[4][4] = {
        {0.119142, 0.690846, 0.0852387, 0.104773},
        {0.00116584, 0.971252, 0.0123734, 0.0152089},
        {0.00809721, 0.0632989, 0.921243, 0.00736101},
        {0.00381045, 0.0297877, 0.433526, 0.532876},
    };
    double hmax = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) hmax = std::max(hmax, std::abs(h.h(i, j) - href[i][j]));
    crit.below("response matrix max |diff|", hmax, 1e-4);

    SpectralBasis b = spectral_basis(h);
    const double sref[4] = {1.22686, 1.02299, 0.46727, 0.094944};
    for (int i = 0; i < 4; ++i)
        crit.near("singular value " + std::to_string(i), b.sigmas[i], sref[i], 1e-4);

    Candidate b21 = candidate_b2_1(h, b);
    Candidate b2t = candidate_b2_t(h, b);
    Candidate heu = heuristic_v_gt1(h, b);
    crit.add("b2_1 available", b21.status == CandidateStatus::Ok);
    crit.add("b2_t available", b2t.status == CandidateStatus::Ok);
    crit.add("heuristic available", heu.status == CandidateStatus::Ok);
    crit.near("shift of the unit-ball candidate", delta_p3(h, b21.s), 0.505183, 1e-4);
    crit.near("shift of the rescaled candidate", delta_p3(h, b2t.s), 0.602663, 1e-4);
    crit.near("shift of the heuristic result", delta_p3(h, heu.s), 0.623852, 1e-4);
    const double r1ref[4] = {0.0549607, 0.733446, 1.0, 0.32813};
    for (int i = 0; i < 4; ++i)
        crit.near("heuristic entry " + std::to_string(i), heu.s[i], r1ref[i], 1e-4);

    const double secs = seconds_since(t0);
    crit.below("runtime seconds", secs, 1.0);
    report(1, "four-node reference", crit, secs);
}

TEST_CASE("criterion 2: three-node example") {
    const auto t0 = std::chrono::steady_clock::now();
    Criterion crit;

    ModelConfig cfg = triangle_config();
    ResponseMatrix h = build_response_matrix(cfg);
    SpectralBasis b = spectral_basis(h);

    Candidate b21 = candidate_b2_1(h, b);
    const double b21ref[3] = {0.0, 0.30, 0.95};
    for (int i = 0; i < 3; ++i)
        crit.near("b2_1 entry " + std::to_string(i), b21.s[i], b21ref[i], 0.01);

    Candidate b2t = candidate_b2_t(h, b);
    const double b2tref[3] = {0.0, 0.31, 1.0};
    for (int i = 0; i < 3; ++i)
        crit.near("b2_t entry " + std::to_string(i), b2t.s[i], b2tref[i], 0.01);
    const Vec zt = h.h * b2t.s;
    const double ztref[3] = {0.8, 0.61, 1.0};
    for (int i = 0; i < 3; ++i)
        crit.near("b2_t final entry " + std::to_string(i), zt[i], ztref[i], 0.01);

    Candidate global = global_p23_search(h, 8, 12, {b2t.s});
    crit.add("global search available", global.status == CandidateStatus::Ok);
    const double gref[3] = {0.0, 0.75, 1.0};
    for (int i = 0; i < 3; ++i)
        crit.near("max_p23 entry " + std::to_string(i), global.s[i], gref[i], 0.02);
    const Vec zg = h.h * global.s;
    const double zgref[3] = {0.95, 0.89, 1.0};
    for (int i = 0; i < 3; ++i)
        crit.near("max_p23 final entry " + std::to_string(i), zg[i], zgref[i], 0.02);

    const double secs = seconds_since(t0);
    crit.below("runtime seconds", secs, 5.0);
    report(2, "three-node example", crit, secs);
}

TEST_CASE("criterion 3: sign-pattern examples") {
    const auto t0 = std::chrono::steady_clock::now();
    Criterion crit;

    auto run = [&](const std::string& tag, const ModelConfig& cfg, const Vec& s,
                   const Vec& zref, double ztol) {
        ResponseMatrix h = build_response_matrix(cfg);
        const OpinionVector prejudice(s);
        const OpinionVector z = steady_state(h, prejudice);
        for (std::size_t i = 0; i < zref.size(); ++i)
            crit.near(tag + " steady state entry " + std::to_string(i), z[i], zref[i], ztol);
        return shift_report(prejudice, z, cfg.w, arcs_of(cfg.w));
    };

    ShiftReport ex1 = run("ex1", triangle_config(), {0.0, 1.0, 1.0}, {1.0, 1.0, 1.0}, 0.005);
    crit.add("ex1 dispersion negative", ex1.delta.p1 < 0.0 && ex1.delta.gdi < 0.0);
    crit.add("ex1 absolute positive", ex1.delta.p2 > 0.0 && ex1.delta.p3 > 0.0);
    crit.add("ex1 total positive", ex1.delta.p4 > 0.0);

    Mat w2(4, 4);
    w2(0, 2) = w2(0, 3) = 0.5;
    w2(1, 2) = w2(1, 3) = 0.5;
    w2(2, 0) = w2(2, 1) = 0.5;
    w2(3, 0) = w2(3, 1) = 0.5;
    ModelConfig ex2cfg = ModelConfig::gfj(
        InfluenceMatrix::from_matrix(w2),
        SusceptibilityProfile::explicit_profile({0.0, 0.5, 0.5, 0.0}));
    ShiftReport ex2 =
        run("ex2", ex2cfg, {0.0, 0.5, 0.5, 1.0}, {0.0, 0.6, 0.4, 1.0}, 0.005);
    crit.add("ex2 dispersion positive", ex2.delta.p1 > 0.0 && ex2.delta.gdi > 0.0);
    crit.add("ex2 absolute positive", ex2.delta.p2 > 0.0 && ex2.delta.p3 > 0.0);
    crit.below("ex2 total nonpositive", ex2.delta.p4, 1e-12);

    Mat w3(4, 4);
    w3(0, 2) = 0.67; w3(0, 3) = 0.33;
    w3(1, 2) = 0.5;  w3(1, 3) = 0.5;
    w3(2, 0) = 0.67; w3(2, 1) = 0.33;
    w3(3, 0) = 0.5;  w3(3, 1) = 0.5;
    ModelConfig ex3cfg = ModelConfig::gfj(
        InfluenceMatrix::from_matrix(w3),
        SusceptibilityProfile::explicit_profile({0.0, 0.5, 0.5, 0.0}));
    ShiftReport ex3 =
        run("ex3", ex3cfg, {0.0, 0.5, 0.5, 1.0}, {0.0, 0.59, 0.35, 1.0}, 0.005);
    crit.add("ex3 dispersion positive", ex3.delta.p1 > 0.0 && ex3.delta.gdi > 0.0);
    crit.add("ex3 absolute negative", ex3.delta.p2 < 0.0 && ex3.delta.p3 < 0.0);
    crit.add("ex3 total negative", ex3.delta.p4 < 0.0);

    const double secs = seconds_since(t0);
    report(3, "sign-pattern examples", crit, secs);
}

TEST_CASE("criterion 4: anchoring norm table") {
    const auto t0 = std::chrono::steady_clock::now();
    Criterion crit;

    const double expected[3][2] = {
        {1.45238, 1.09721}, {1.49101, 1.15802}, {1.21756, 1.01996}};
    const double lambda0[3] = {0.0, 0.9, 0.2};
    double n1[3], n2[3];
    for (int k = 0; k < 3; ++k) {
        ResponseMatrix h = build_response_matrix(stub_config(lambda0[k]));
        n1[k] = h.norm1();
        n2[k] = largest_singular_value(h.h);
        crit.near("config " + std::to_string(k + 1) + " 1-norm", n1[k], expected[k][0], 1e-4);
        crit.near("config " + std::to_string(k + 1) + " 2-norm", n2[k], expected[k][1], 1e-4);
        if (k == 0) {
            // the heaviest-column prejudice of config (1) and its image
            const Vec z = h.h * Vec{1.0, 0.0, 0.0};
            const double zref[3] = {1.0, 0.214286, 0.238095};
            for (int i = 0; i < 3; ++i)
                crit.near("config 1 image entry " + std::to_string(i), z[i], zref[i], 1e-4);
        }
    }
    crit.add("config 1 sits between the others (1-norm)", n1[2] < n1[0] && n1[0] < n1[1]);
    crit.add("config 1 sits between the others (2-norm)", n2[2] < n2[0] && n2[0] < n2[1]);

    const double secs = seconds_since(t0);
    report(4, "anchoring norm table", crit, secs);
}

TEST_CASE("criterion 5: club graph structural reproduction") {
    const auto t0 = std::chrono::steady_clock::now();
    Criterion crit;

    SocialGraph karate = load_karate();
    crit.add("club graph has 34 members and 78 edges", karate.n == 34 &&
                                                           karate.edges.size() == 156);
    const Vec pr = pagerank(karate);
    std::size_t top1 = 0, top2 = 1;
    if (pr[top2] > pr[top1]) std::swap(top1, top2);
    for (std::size_t i = 2; i < pr.size(); ++i) {
        if (pr[i] > pr[top1]) { top2 = top1; top1 = i; }
        else if (pr[i] > pr[top2]) top2 = i;
    }
    crit.add("pagerank peaks at nodes 0 and 33",
             (top1 == 0 && top2 == 33) || (top1 == 33 && top2 == 0));

    struct Scheme {
        std::string name;
        SusceptibilityProfile lam;
    };
    std::vector<Scheme> schemes;
    schemes.push_back({"prop", build_susceptibility(pr, SusceptibilityScheme::PageRankProportional)});
    schemes.push_back({"inv", build_susceptibility(pr, SusceptibilityScheme::PageRankInverse)});
    schemes.push_back({"const", build_susceptibility(pr, SusceptibilityScheme::Constant, 0.01, 0.8)});

    InfluenceMatrix w = row_normalize(karate);
    const auto arcs = karate.edges;

    for (const Scheme& sc : schemes) {
        const std::string tag = "[" + sc.name + "] ";
        ModelConfig cfg = ModelConfig::gfj(w, sc.lam);
        ResponseMatrix h = build_response_matrix(cfg);
        SpectralBasis basis = spectral_basis(h);

        Candidate b21 = candidate_b2_1(h, basis);
        Candidate b2t = candidate_b2_t(h, basis);
        Candidate vgt = candidate_subspace_qp(h, basis, SubspaceMode::StrictlyGreater);
        Candidate vge = candidate_subspace_qp(h, basis, SubspaceMode::GreaterOrEqual);
        Candidate heu = heuristic_v_gt1(h, basis);
        std::vector<Vec> seeds;
        for (const Candidate* c : {&b2t, &vgt, &vge, &heu})
            if (c->status == CandidateStatus::Ok) seeds.push_back(c->s);
        Candidate maxp23 = global_p23_search(h, 12, 12, seeds, 7);
        Candidate b11 = candidate_b1_1(h);
        Candidate maxp4 = candidate_lp_p4(h, basis);

        if (sc.name == "const")
            crit.add(tag + "only one singular value above one",
                     basis.count_above_one() == 1 &&
                         vgt.status == CandidateStatus::Unavailable);
        else
            crit.add(tag + "subspace candidates available",
                     vgt.status == CandidateStatus::Ok && vge.status == CandidateStatus::Ok);

        std::vector<const Candidate*> p23_cands{&b21, &b2t, &vgt, &vge, &heu, &maxp23};
        std::vector<const Candidate*> p4_cands{&b11, &maxp4};

        // (a) designated classes strictly positive
        for (const Candidate* c : p23_cands) {
            if (c->status != CandidateStatus::Ok) continue;
            const double d3 = delta_p3(h, c->s);
            crit.add(tag + c->name + " dP2/dP3 positive", d3 > 0.0,
                     "dP3 = " + std::to_string(d3));
        }
        for (const Candidate* c : p4_cands) {
            if (c->status != CandidateStatus::Ok) continue;
            const double d4 = delta_p4(h, c->s);
            crit.add(tag + c->name + " dP4 positive", d4 > 0.0, "dP4 = " + std::to_string(d4));
        }

        // (b) the local index never grows, any prejudice
        std::vector<std::pair<std::string, Vec>> rows;
        rows.emplace_back("unif", uniform_baseline(karate.n, 42));
        for (const Candidate* c : p23_cands)
            if (c->status == CandidateStatus::Ok) rows.emplace_back(c->name, c->s);
        for (const Candidate* c : p4_cands)
            if (c->status == CandidateStatus::Ok) rows.emplace_back(c->name, c->s);
        for (const auto& [name, s] : rows) {
            const OpinionVector prejudice(s);
            const OpinionVector z = steady_state(h, prejudice);
            const ShiftReport r = shift_report(prejudice, z, w, arcs);
            crit.add(tag + name + " dNDI negative", r.delta.ndi < 0.0,
                     "dNDI = " + std::to_string(r.delta.ndi));
        }

        // (c) nested-domain ordering among the available candidates
        double prev = -1e300;
        for (const Candidate* c : p23_cands) {
            if (c->status != CandidateStatus::Ok || c == &heu) continue;
            const double d3 = delta_p3(h, c->s);
            crit.add(tag + "ordering at " + c->name, d3 >= prev - 1e-9,
                     std::to_string(prev) + " then " + std::to_string(d3));
            prev = d3;
        }
        if (heu.status == CandidateStatus::Ok)
            crit.add(tag + "heuristic at least b2_t",
                     delta_p3(h, heu.s) >= delta_p3(h, b2t.s) - 1e-9);
        crit.add(tag + "max_p4 at least b1_1",
                 delta_p4(h, maxp4.s) >= delta_p4(h, b11.s) - 1e-9);

        // (d) closed-form shift of the unit-ball candidate
        crit.near(tag + "dP3(b2_1) = sigma1^2 - 1", delta_p3(h, b21.s),
                  basis.sigmas[0] * basis.sigmas[0] - 1.0, 1e-8);

        // (e) dispersion sufficient condition under the inverse scheme
        if (sc.name == "inv") {
            for (const Candidate* c : {&b21, &b2t}) {
                const SufficientTestReport st =
                    p1_gdi_sufficient_test(basis, {basis.coefficients(c->s)});
                crit.add(tag + c->name + " sufficient condition holds",
                         st.verdict == Verdict::SufficientHolds);
                const OpinionVector prejudice(c->s);
                const OpinionVector z = steady_state(h, prejudice);
                const ShiftReport r = shift_report(prejudice, z, w, arcs);
                crit.add(tag + c->name + " dP1 positive", r.delta.p1 > 0.0,
                         "dP1 = " + std::to_string(r.delta.p1));
            }
            // soundness on every candidate: whenever the test fires, the
            // dispersion shift is indeed positive
            for (const Candidate* c : p23_cands) {
                if (c->status != CandidateStatus::Ok) continue;
                const SufficientTestReport st =
                    p1_gdi_sufficient_test(basis, {basis.coefficients(c->s)});
                if (st.verdict != Verdict::SufficientHolds) continue;
                const OpinionVector prejudice(c->s);
                const OpinionVector z = steady_state(h, prejudice);
                const ShiftReport r = shift_report(prejudice, z, w, arcs);
                crit.add(tag + c->name + " sufficient-condition soundness", r.delta.p1 > 0.0);
            }
        }
    }

    const double secs = seconds_since(t0);
    crit.below("runtime seconds", secs, 30.0);
    report(5, "club graph structural reproduction", crit, secs);
}

TEST_CASE("criterion 6: property batteries") {
    const auto t0 = std::chrono::steady_clock::now();
    Criterion crit;

    { // stochastic responses and non-growing local disagreement
        SplitMix64 rng(2001);
        bool stochastic = true, local = true;
        for (int rep = 0; rep < 200; ++rep) {
            ModelConfig cfg = random_gfj(rng, 15, rep % 3 == 0);
            ResponseMatrix h = build_response_matrix(cfg);
            for (std::size_t i = 0; i < h.size(); ++i) {
                double sum = 0.0;
                for (std::size_t j = 0; j < h.size(); ++j) {
                    stochastic = stochastic && h.h(i, j) >= 0.0;
                    sum += h.h(i, j);
                }
                stochastic = stochastic && std::abs(sum - 1.0) <= 1e-9;
            }
            const OpinionVector s = random_opinions(rng, h.size());
            const OpinionVector z = steady_state(h, s);
            const auto arcs = arcs_of(cfg.w);
            local = local && metrics_bundle(z, cfg.w, arcs).ndi <=
                                 metrics_bundle(s, cfg.w, arcs).ndi + 1e-9;
        }
        crit.add("responses nonnegative row-stochastic (200 runs)", stochastic);
        crit.add("local disagreement never grows (200 runs)", local);
    }
    { // index identities
        SplitMix64 rng(2002);
        bool ok = true;
        for (int rep = 0; rep < 200; ++rep) {
            const std::size_t n = 2 + rng.next_below(14);
            const MetricsBundle m = metrics_bundle(random_opinions(rng, n));
            const double nn = static_cast<double>(n);
            ok = ok && std::abs(m.gdi - nn * m.p1) <= 1e-9 * (1.0 + std::abs(m.gdi));
            ok = ok && std::abs(m.p3 - nn * m.p2) <= 1e-9 * (1.0 + std::abs(m.p3));
            ok = ok && m.p1 >= m.p3 - m.p4 * m.p4 / nn - 1e-9;
        }
        crit.add("index identities (200 runs)", ok);
    }
    { // doubly stochastic preservation: mean for every prejudice, 1-norm on
      // concordant prejudices (mixed signs may cancel, so equality there is
      // not a theorem; the depolarizing direction still holds)
        SplitMix64 rng(2003);
        bool ok = true;
        for (int rep = 0; rep < 200; ++rep) {
            const std::size_t n = 2 + rng.next_below(14);
            ModelConfig cfg = ModelConfig::gfj(
                random_doubly_stochastic(rng, n),
                SusceptibilityProfile::explicit_profile(Vec(n, rng.uniform(0.1, 0.9))));
            ResponseMatrix h = build_response_matrix(cfg);
            const OpinionVector s = random_opinions(rng, n);
            const OpinionVector z = steady_state(h, s);
            ok = ok && std::abs(metrics_bundle(z).total_opinion -
                                metrics_bundle(s).total_opinion) <= 1e-9;
            ok = ok && metrics_bundle(z).p4 <= metrics_bundle(s).p4 + 1e-9;
            const OpinionVector sc = random_opinions(rng, n, true);
            const OpinionVector zc = steady_state(h, sc);
            ok = ok && std::abs(metrics_bundle(zc).p4 - metrics_bundle(sc).p4) <= 1e-9;
        }
        crit.add("doubly stochastic responses preserve the mean and concordant P4 (200 runs)",
                 ok);
    }
    { // restricted variant on undirected graphs
        SplitMix64 rng(2004);
        bool ok = true;
        for (int rep = 0; rep < 200; ++rep) {
            const std::size_t n = 3 + rng.next_below(12);
            SocialGraph g = random_undirected_graph(rng, n);
            ModelConfig cfg = ModelConfig::rfj(g);
            ResponseMatrix h = build_response_matrix(cfg);
            const OpinionVector s = random_opinions(rng, n);
            const OpinionVector z = steady_state(h, s);
            const ShiftReport r = shift_report(s, z, map_vfj_to_gfj(cfg).w, g.edges);
            ok = ok && r.delta.p1 <= 1e-9 && r.delta.p2 <= 1e-9 && r.delta.p3 <= 1e-9 &&
                 r.delta.p4 <= 1e-9 && r.delta.ndi <= 1e-9 && r.delta.gdi <= 1e-9 &&
                 std::abs(r.choice_shift) <= 1e-9;
        }
        crit.add("restricted variant never polarizes undirected graphs (200 runs)", ok);
    }
    { // concordance lift
        SplitMix64 rng(2005);
        bool ok = true;
        for (int rep = 0; rep < 200; ++rep) {
            ModelConfig cfg = random_gfj(rng, 12);
            ResponseMatrix h = build_response_matrix(cfg);
            const OpinionVector s = random_opinions(rng, h.size());
            for (BruteMetric m : {BruteMetric::P2, BruteMetric::P3, BruteMetric::P4}) {
                const Vec lifted = concordance_lift(s.values(), h, m);
                ok = ok && delta_metric(h, lifted, m) >= delta_metric(h, s.values(), m) - 1e-9;
            }
        }
        crit.add("concordance lift dominates (200 runs)", ok);
    }
    { // negation symmetry of candidate shifts
        SplitMix64 rng(2006);
        bool ok = true;
        for (int rep = 0; rep < 200; ++rep) {
            ModelConfig cfg = random_gfj(rng, 10);
            ResponseMatrix h = build_response_matrix(cfg);
            SpectralBasis b = spectral_basis(h);
            for (const Candidate& c :
                 {candidate_b2_1(h, b), candidate_b2_t(h, b), candidate_b1_1(h),
                  candidate_lp_p4(h, b), heuristic_v_gt1(h, b)}) {
                if (c.status != CandidateStatus::Ok) continue;
                Vec neg = c.s;
                for (double& v : neg) v = -v;
                ok = ok && std::abs(delta_p3(h, neg) - delta_p3(h, c.s)) <= 1e-12 &&
                     std::abs(delta_p4(h, neg) - delta_p4(h, c.s)) <= 1e-12;
            }
        }
        crit.add("negation symmetry of candidate shifts (200 runs)", ok);
    }
    { // condition scan equivalence
        SplitMix64 rng(2007);
        bool ok = true;
        for (int rep = 0; rep < 200; ++rep) {
            ModelConfig cfg = random_gfj(rng, 12);
            const bool polarizing = gfj_condition_scan(cfg).verdict == Verdict::Polarizing;
            const bool doubly =
                doubly_stochastic_test(build_response_matrix(cfg)).doubly_stochastic;
            ok = ok && polarizing == !doubly;
        }
        crit.add("condition scan equals the doubly-stochastic test (200 runs)", ok);
    }

    const double secs = seconds_since(t0);
    crit.below("runtime seconds", secs, 60.0);
    report(6, "property batteries", crit, secs);
}

TEST_CASE("criterion 7: oracle equivalence and the large smoke run") {
    const auto t0 = std::chrono::steady_clock::now();
    Criterion crit;

    SplitMix64 rng(3001);
    int done = 0;
    while (done < 20) {
        ModelConfig cfg = random_gfj(rng, 6, true);
        ResponseMatrix h = build_response_matrix(cfg);
        SpectralBasis b = spectral_basis(h);
        if (!(b.sigmas[0] > 1.0 + 1e-6)) continue;
        ++done;
        const std::string tag = "instance " + std::to_string(done) + " ";

        Candidate lp = candidate_lp_p4(h, b);
        Candidate bruteP4 = brute_force_max(h, BruteMetric::P4, 6);
        crit.near(tag + "vertex sweep equals the linear maximizer",
                  bruteP4.predicted_delta, delta_p4(h, lp.s), 1e-9);

        const int g = 12;
        Candidate bruteP3 = brute_force_max(h, BruteMetric::P3, g);
        Candidate b2t = candidate_b2_t(h, b);
        std::vector<Vec> seeds{b2t.s};
        Candidate maxp23 = global_p23_search(h, 4, 12, seeds);
        crit.add(tag + "grid max below the certified global",
                 bruteP3.predicted_delta <= maxp23.predicted_delta + 1e-6,
                 std::to_string(bruteP3.predicted_delta) + " vs " +
                     std::to_string(maxp23.predicted_delta));
        // domination of b2_t within grid resolution: snap it to the grid
        Vec snapped = b2t.s;
        for (double& v : snapped)
            v = std::round(v * g) / g;
        const double margin =
            std::abs(delta_p3(h, b2t.s) - delta_p3(h, snapped)) + 1e-9;
        crit.add(tag + "grid max dominates b2_t within grid resolution",
                 bruteP3.predicted_delta >= delta_p3(h, b2t.s) - margin,
                 std::to_string(bruteP3.predicted_delta) + " vs " +
                     std::to_string(delta_p3(h, b2t.s)) + " margin " +
                     std::to_string(margin));
    }

    { // smoke run at four-digit scale
        const auto smoke0 = std::chrono::steady_clock::now();
        SocialGraph g = smoke_graph(1000, 3, 99);
        const Vec pr = pagerank(g);
        ModelConfig cfg = ModelConfig::gfj(
            row_normalize(g),
            build_susceptibility(pr, SusceptibilityScheme::PageRankInverse));
        ResponseMatrix h = build_response_matrix(cfg);
        SpectralBasis b = spectral_basis(h);
        Candidate b21 = candidate_b2_1(h, b);
        Candidate b2t = candidate_b2_t(h, b);
        Candidate b11 = candidate_b1_1(h);
        Candidate heu = heuristic_v_gt1(h, b);
        crit.add("smoke candidates computed",
                 b21.status == CandidateStatus::Ok && b2t.status == CandidateStatus::Ok &&
                     b11.status == CandidateStatus::Ok && heu.status == CandidateStatus::Ok);
        crit.add("smoke heuristic at least b2_t",
                 delta_p3(h, heu.s) >= delta_p3(h, b2t.s) - 1e-9);
        crit.below("smoke runtime seconds", seconds_since(smoke0), 600.0);
    }

    const double secs = seconds_since(t0);
    report(7, "oracle equivalence and smoke run", crit, secs);
}
