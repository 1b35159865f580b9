#ifndef FJPOL_CONDITIONS_HPP
#define FJPOL_CONDITIONS_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fjpol/errors.hpp"
#include "fjpol/metrics.hpp"
#include "fjpol/models.hpp"
#include "fjpol/spectral.hpp"

namespace fjpol {

enum class MetricClass { Local, Dispersion, Absolute, Total };

inline const char* metric_class_name(MetricClass c) {
    switch (c) {
        case MetricClass::Local: return "local(NDI)";
        case MetricClass::Dispersion: return "dispersion(P1,GDI)";
        case MetricClass::Absolute: return "absolute(P2,P3)";
        case MetricClass::Total: return "total(P4)";
    }
    return "?";
}

enum class Verdict { Polarizing, Depolarizing, SufficientHolds, Inconclusive };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Polarizing: return "polarizing";
        case Verdict::Depolarizing: return "depolarizing";
        case Verdict::SufficientHolds: return "sufficient-holds";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

struct ConditionVerdict {
    MetricClass metric_class = MetricClass::Absolute;
    Verdict verdict = Verdict::Inconclusive;
    std::optional<std::size_t> witness;
    Vec residuals;       // per-node residual of the tested condition
    std::string note;
};

struct DoublyStochasticReport {
    bool doubly_stochastic = false;
    double max_column_deviation = 0.0;
    double norm1 = 0.0;
    double norm2 = 0.0;  // largest singular value; equals 1 iff doubly stochastic
};

inline DoublyStochasticReport doubly_stochastic_test(const ResponseMatrix& h,
                                                     double tol = 1e-9) {
    DoublyStochasticReport r;
    const Vec cs = h.column_sums();
    for (double s : cs) {
        r.max_column_deviation = std::max(r.max_column_deviation, std::abs(s - 1.0));
        r.norm1 = std::max(r.norm1, s); // H is nonnegative, so |.| is free
    }
    r.norm2 = largest_singular_value(h.h);
    r.doubly_stochastic = r.max_column_deviation <= tol;
    return r;
}

// Per-node test of Σ_j λ_j w_ji / (1 - λ_j) = λ_i / (1 - λ_i); any violation
// makes the model polarizing for the absolute and total classes. A naive
// node short-circuits to polarizing (its response column is all-zero).
inline ConditionVerdict gfj_condition_scan(const ModelConfig& cfg, double tol = 1e-9) {
    if (cfg.variant != Variant::Gfj)
        throw ValidationError("gfj_condition_scan expects a generalized-variant config");
    const std::size_t n = cfg.size();
    const Vec& lam = cfg.lambdas.lambdas;

    ConditionVerdict v;
    v.metric_class = MetricClass::Absolute;
    for (std::size_t i = 0; i < n; ++i) {
        if (lam[i] >= 1.0 - kNaiveTol) {
            v.verdict = Verdict::Polarizing;
            v.witness = i;
            v.note = "naive node present";
            return v;
        }
    }
    v.residuals.resize(n, 0.0);
    std::optional<std::size_t> witness;
    for (std::size_t i = 0; i < n; ++i) {
        double lhs = 0.0, mag = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double term = lam[j] * cfg.w.w(j, i) / (1.0 - lam[j]);
            lhs += term;
            mag += std::abs(term);
        }
        const double rhs = lam[i] / (1.0 - lam[i]);
        v.residuals[i] = lhs - rhs;
        if (!witness && std::abs(v.residuals[i]) > tol * (1.0 + mag + std::abs(rhs)))
            witness = i;
    }
    if (witness) {
        v.verdict = Verdict::Polarizing;
        v.witness = witness;
    } else {
        v.verdict = Verdict::Depolarizing;
    }
    return v;
}

// Per-node test of Σ_{j≠i} ŵ_ij/ŵ_ii - Σ_{j≠i} ŵ_ji/ŵ_jj = 0 (variational)
// or Σ_{j≠i} ŵ_ij - Σ_{j≠i} ŵ_ji = 0 (restricted). Terms with an infinite
// self-weight contribute zero. An undirected graph with identical
// self-weights is never polarizing in any metric; the restricted variant on
// an undirected graph never polarizes at all.
inline ConditionVerdict vfj_rfj_condition(const ModelConfig& cfg, double tol = 1e-9) {
    if (cfg.variant == Variant::Gfj)
        throw ValidationError("vfj_rfj_condition expects a variational/restricted config");
    const SocialGraph& g = cfg.graph;
    const std::size_t n = g.n;

    ConditionVerdict v;
    v.metric_class = MetricClass::Absolute;

    for (std::size_t i = 0; i < n; ++i) {
        const double sw = g.self_weight(i);
        if (sw == 0.0) {
            // zero anchor = naive node under the variational reading
            v.verdict = Verdict::Polarizing;
            v.witness = i;
            v.note = "naive node present (zero self-weight)";
            return v;
        }
    }

    bool identical_self = true;
    if (cfg.variant == Variant::Vfj) {
        for (std::size_t i = 1; i < n; ++i)
            if (std::abs(g.self_weight(i) - g.self_weight(0)) > tol) identical_self = false;
    }

    v.residuals.resize(n, 0.0);
    Vec out(n, 0.0), in_scaled(n, 0.0), mag(n, 0.0);
    for (const Edge& e : g.edges) {
        // both sums scale an arc by its source's self-weight
        const double swf = g.self_weight(e.from);
        if (cfg.variant == Variant::Rfj) {
            out[e.from] += e.weight;
            in_scaled[e.to] += e.weight;
            mag[e.from] += e.weight;
            mag[e.to] += e.weight;
        } else if (!std::isinf(swf)) {
            out[e.from] += e.weight / swf;
            in_scaled[e.to] += e.weight / swf;
            mag[e.from] += e.weight / swf;
            mag[e.to] += e.weight / swf;
        }
    }
    std::optional<std::size_t> witness;
    for (std::size_t i = 0; i < n; ++i) {
        v.residuals[i] = out[i] - in_scaled[i];
        if (!witness && std::abs(v.residuals[i]) > tol * (1.0 + mag[i])) witness = i;
    }
    if (witness) {
        v.verdict = Verdict::Polarizing;
        v.witness = witness;
        return v;
    }
    v.verdict = Verdict::Depolarizing;
    if (!g.directed && cfg.variant == Variant::Rfj)
        v.note = "restricted variant on an undirected graph: never polarizing in any "
                 "metric, no choice shift";
    else if (!g.directed && identical_self)
        v.note = "undirected graph with identical self-weights: never polarizing in any "
                 "metric, no choice shift";
    return v;
}

struct SufficientTestReport {
    Verdict verdict = Verdict::Inconclusive; // SufficientHolds or Inconclusive
    double lhs = 0.0;
    double rhs = 0.0;
};

// Dispersion-class sufficient condition for a prejudice with coordinates α:
//   Σ α_i^2 (σ_i^2-1) >= (1/n) [Σ |α_i| (σ_i^2-1) <|v_i|,1>] [Σ |α_i| (σ_i^2+1) <|v_i|,1>]
inline SufficientTestReport p1_gdi_sufficient_test(const SpectralBasis& basis,
                                                   const CoefficientVector& alpha) {
    const std::size_t n = basis.size();
    if (alpha.alpha.size() != n)
        throw ValidationError("coefficient vector size does not match basis");
    Vec absdot(n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) absdot[j] += std::abs(basis.b(i, j));
    SufficientTestReport r;
    double t1 = 0.0, t2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double s2 = basis.sigmas[i] * basis.sigmas[i];
        const double a = alpha.alpha[i];
        r.lhs += a * a * (s2 - 1.0);
        t1 += std::abs(a) * (s2 - 1.0) * absdot[i];
        t2 += std::abs(a) * (s2 + 1.0) * absdot[i];
    }
    r.rhs = t1 * t2 / static_cast<double>(n);
    // the guarantee is vacuous unless the absolute-class shift is positive,
    // so a nonpositive left side stays inconclusive
    r.verdict = r.lhs > 1e-12 && r.lhs >= r.rhs ? Verdict::SufficientHolds
                                                : Verdict::Inconclusive;
    return r;
}

// Two-group configuration: naive nodes with free prejudices, everyone else
// anchored at τ. The steady state is exactly τ·1.
inline OpinionVector naive_group_limit(const ModelConfig& cfg, double tau,
                                       const Vec& naive_prejudices) {
    if (cfg.variant != Variant::Gfj)
        throw ValidationError("naive_group_limit expects a generalized-variant config");
    const std::size_t n = cfg.size();
    if (!(std::abs(tau) <= 1.0)) throw ValidationError("tau outside [-1, 1]");
    std::vector<std::size_t> naive;
    for (std::size_t i = 0; i < n; ++i)
        if (cfg.lambdas.lambdas[i] >= 1.0 - kNaiveTol) naive.push_back(i);
    if (naive.size() != naive_prejudices.size())
        throw ValidationError("expected one prejudice per naive node (" +
                              std::to_string(naive.size()) + " naive nodes)");
    Vec s(n, tau);
    for (std::size_t k = 0; k < naive.size(); ++k) {
        if (!(std::abs(naive_prejudices[k]) <= 1.0))
            throw ValidationError("naive prejudice outside [-1, 1]");
        s[naive[k]] = naive_prejudices[k];
    }
    const OpinionVector prejudice(s);
    const OpinionVector predicted(Vec(n, tau));
    const ResponseMatrix h = build_response_matrix(cfg);
    const OpinionVector z = steady_state(h, prejudice);
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(z[i] - tau) > 1e-9)
            throw NumericalError("steady state deviates from τ·1 at node " +
                                 std::to_string(i) + " by " + std::to_string(z[i] - tau));
    return predicted;
}

// Four-class summary for one configured model (parameter-level guarantees
// only; per-prejudice dispersion tests are reported separately).
inline std::vector<ConditionVerdict> condition_report(const ModelConfig& cfg) {
    const ConditionVerdict scan = cfg.variant == Variant::Gfj ? gfj_condition_scan(cfg)
                                                              : vfj_rfj_condition(cfg);
    ConditionVerdict local;
    local.metric_class = MetricClass::Local;
    local.verdict = Verdict::Depolarizing;
    local.note = "always depolarizing for a converging model";

    ConditionVerdict absolute = scan;
    absolute.metric_class = MetricClass::Absolute;
    ConditionVerdict total = scan;
    total.metric_class = MetricClass::Total;

    ConditionVerdict dispersion;
    dispersion.metric_class = MetricClass::Dispersion;
    if (scan.verdict == Verdict::Depolarizing) {
        dispersion.verdict = Verdict::Depolarizing;
        dispersion.note = "depolarizing for the absolute class implies depolarizing here";
    } else {
        dispersion.verdict = Verdict::Inconclusive;
        dispersion.note = "decided per prejudice by the sufficient test";
    }
    return {local, dispersion, absolute, total};
}

} // namespace fjpol

#endif // FJPOL_CONDITIONS_HPP
