#ifndef FJPOL_MODELS_HPP
#define FJPOL_MODELS_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fjpol/errors.hpp"
#include "fjpol/graph.hpp"
#include "fjpol/linalg.hpp"

namespace fjpol {

enum class Variant { Gfj, Vfj, Rfj };

inline const char* variant_name(Variant v) {
    switch (v) {
        case Variant::Gfj: return "gfj";
        case Variant::Vfj: return "vfj";
        case Variant::Rfj: return "rfj";
    }
    return "?";
}

constexpr double kNaiveTol = 1e-12;

// One configured model. The generalized variant carries an influence matrix
// and susceptibilities; the variational/restricted variants carry the social
// graph (self-weights included; the restricted variant pins them to 1).
struct ModelConfig {
    Variant variant = Variant::Gfj;
    InfluenceMatrix w;              // gfj
    SusceptibilityProfile lambdas;  // gfj
    SocialGraph graph;              // vfj / rfj

    static ModelConfig gfj(InfluenceMatrix w, SusceptibilityProfile lambdas) {
        if (w.size() != lambdas.size())
            throw ValidationError("influence matrix and susceptibility size mismatch");
        ModelConfig m;
        m.variant = Variant::Gfj;
        m.w = std::move(w);
        m.lambdas = std::move(lambdas);
        return m;
    }

    static ModelConfig vfj(SocialGraph g) {
        validate(g);
        if (!g.self_weights) g.self_weights = Vec(g.n, 0.0); // absent anchor = oblivious node
        ModelConfig m;
        m.variant = Variant::Vfj;
        m.graph = std::move(g);
        return m;
    }

    static ModelConfig rfj(SocialGraph g) {
        validate(g);
        g.self_weights = Vec(g.n, 1.0);
        ModelConfig m;
        m.variant = Variant::Rfj;
        m.graph = std::move(g);
        return m;
    }

    std::size_t size() const { return variant == Variant::Gfj ? w.size() : graph.n; }
};

// λ_i = Σ_k ŵ_ik / (ŵ_ii + Σ_k ŵ_ik), w_ij = ŵ_ij / Σ_k ŵ_ik for a finite
// anchor; an infinite anchor maps to λ_i = 0. Rows of anchored (or
// neighborless) nodes become identity rows so W stays row-stochastic; H is
// unaffected because (I - Λ) zeroes their dependence on others.
inline ModelConfig map_vfj_to_gfj(const ModelConfig& cfg) {
    if (cfg.variant == Variant::Gfj) return cfg;
    const SocialGraph& g = cfg.graph;
    const std::size_t n = g.n;
    Mat w(n, n);
    Vec lam(n, 0.0);
    Vec neigh(n, 0.0);
    for (const Edge& e : g.edges) neigh[e.from] += e.weight;
    for (std::size_t i = 0; i < n; ++i) {
        const double sw = g.self_weight(i);
        if (std::isinf(sw)) {
            lam[i] = 0.0;
            w(i, i) = 1.0;
            continue;
        }
        if (!(neigh[i] > 0.0)) {
            if (!(sw > 0.0))
                throw ValidationError("node " + std::to_string(i) +
                                      " has zero neighbor weight and zero self-weight");
            lam[i] = 0.0;
            w(i, i) = 1.0;
            continue;
        }
        lam[i] = neigh[i] / (sw + neigh[i]);
        for (const Edge& e : g.edges)
            if (e.from == i) w(i, e.to) = e.weight / neigh[i];
    }
    return ModelConfig::gfj(InfluenceMatrix::from_matrix(std::move(w)),
                            SusceptibilityProfile::explicit_profile(std::move(lam)));
}

enum class ConvergenceVerdict { Converges, Unknown };

struct ConvergenceReport {
    ConvergenceVerdict verdict = ConvergenceVerdict::Unknown;
    double rho_estimate = 0.0;       // power-iteration estimate of ρ(ΛW)
    double gershgorin_bound = 0.0;   // max row sum of ΛW; certifies when < 1
};

inline ConvergenceReport convergence_check(const ModelConfig& cfg) {
    const ModelConfig g = map_vfj_to_gfj(cfg);
    const std::size_t n = g.size();
    Mat lw(n, n);
    double gersh = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double rowsum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            lw(i, j) = g.lambdas.lambdas[i] * g.w.w(i, j);
            rowsum += lw(i, j);
        }
        gersh = std::max(gersh, rowsum);
    }
    ConvergenceReport r;
    r.gershgorin_bound = gersh;
    r.rho_estimate = spectral_radius_nonnegative(lw, 1e-13, 5000);
    const double rho = std::min(r.rho_estimate, r.gershgorin_bound);
    r.verdict = rho < 1.0 - 1e-10 ? ConvergenceVerdict::Converges : ConvergenceVerdict::Unknown;
    return r;
}

// The n x n map from prejudice to steady-state opinion, z = H s.
struct ResponseMatrix {
    Mat h;
    Variant variant = Variant::Gfj;
    std::vector<std::size_t> naive_set; // nodes with λ_i = 1 (post-mapping)

    std::size_t size() const { return h.rows(); }

    Vec column_sums() const {
        Vec s(h.cols(), 0.0);
        for (std::size_t i = 0; i < h.rows(); ++i)
            for (std::size_t j = 0; j < h.cols(); ++j) s[j] += h(i, j);
        return s;
    }

    double norm1() const {
        const Vec s = column_sums();
        return *std::max_element(s.begin(), s.end());
    }
};

namespace detail {

inline void check_response_invariants(Mat& h) {
    for (std::size_t i = 0; i < h.rows(); ++i) {
        double rowsum = 0.0;
        for (std::size_t j = 0; j < h.cols(); ++j) {
            double& v = h(i, j);
            if (v < -1e-9)
                throw NumericalError("response matrix has negative entry " + std::to_string(v));
            if (v < 0.0) v = 0.0;
            rowsum += v;
        }
        if (std::abs(rowsum - 1.0) > 1e-9)
            throw NumericalError("response matrix row " + std::to_string(i) + " sums to " +
                                 std::to_string(rowsum));
    }
}

} // namespace detail

// H = (I - ΛW)^{-1} (I - Λ), formed by LU solves against the columns of
// (I - Λ). Refuses configurations whose convergence cannot be certified.
inline ResponseMatrix build_response_matrix(const ModelConfig& cfg) {
    const ModelConfig g = map_vfj_to_gfj(cfg);
    const auto conv = convergence_check(g);
    if (conv.verdict != ConvergenceVerdict::Converges)
        throw ConvergenceError("cannot certify ρ(ΛW) < 1 (estimate " +
                                   std::to_string(conv.rho_estimate) + ")",
                               conv.rho_estimate);
    const std::size_t n = g.size();
    Mat a(n, n);
    Mat rhs(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a(i, j) = -g.lambdas.lambdas[i] * g.w.w(i, j);
        a(i, i) += 1.0;
        rhs(i, i) = 1.0 - g.lambdas.lambdas[i];
    }
    ResponseMatrix r;
    r.h = solve_matrix(std::move(a), rhs);
    r.variant = cfg.variant;
    for (std::size_t i = 0; i < n; ++i)
        if (g.lambdas.lambdas[i] >= 1.0 - kNaiveTol) r.naive_set.push_back(i);
    detail::check_response_invariants(r.h);
    return r;
}

// Direct algebraic route for the variational model, H = (D + Ã - A)^{-1} Ã.
// Finite self-weights only; serves as an independent cross-check of the
// mapped construction.
inline Mat vfj_response_direct(const SocialGraph& g) {
    validate(g);
    const std::size_t n = g.n;
    Mat a(n, n);
    Mat rhs(n, n);
    for (const Edge& e : g.edges) {
        a(e.from, e.to) -= e.weight;
        a(e.from, e.from) += e.weight;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double sw = g.self_weight(i);
        if (std::isinf(sw))
            throw ValidationError("direct variational route cannot take infinite self-weights");
        a(i, i) += sw;
        rhs(i, i) = sw;
    }
    return solve_matrix(std::move(a), rhs);
}

// Direct route for the restricted model, H = (L + I)^{-1}.
inline Mat rfj_response_direct(const SocialGraph& g) {
    validate(g);
    const std::size_t n = g.n;
    Mat a(n, n);
    for (const Edge& e : g.edges) {
        a(e.from, e.to) -= e.weight;
        a(e.from, e.from) += e.weight;
    }
    for (std::size_t i = 0; i < n; ++i) a(i, i) += 1.0;
    return solve_matrix(std::move(a), Mat::identity(n));
}

inline OpinionVector steady_state(const ResponseMatrix& h, const OpinionVector& s) {
    if (h.size() != s.size())
        throw ValidationError("opinion vector size does not match response matrix");
    return OpinionVector(h.h * s.values());
}

struct IterationResult {
    OpinionVector opinions;
    int iterations = 0;
};

struct IterationDivergence : ConvergenceError {
    IterationDivergence(const std::string& what, double residual, Vec last)
        : ConvergenceError(what, residual), last_iterate(std::move(last)) {}
    Vec last_iterate;
};

// Fixed-point iteration z(k+1) = (I - Λ) s + Λ W z(k), started at z(0) = s.
inline IterationResult iterate_dynamics(const ModelConfig& cfg, const OpinionVector& s,
                                        double tol = 1e-10, int max_iter = 100000) {
    const ModelConfig g = map_vfj_to_gfj(cfg);
    const std::size_t n = g.size();
    if (s.size() != n) throw ValidationError("opinion vector size mismatch");
    if (convergence_check(g).verdict != ConvergenceVerdict::Converges)
        throw ConvergenceError("iterate_dynamics requires a certified-convergent model");
    Vec anchor(n);
    for (std::size_t i = 0; i < n; ++i)
        anchor[i] = (1.0 - g.lambdas.lambdas[i]) * s[i];
    Vec z = s.values();
    double diff = 0.0;
    for (int it = 1; it <= max_iter; ++it) {
        Vec zn(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double* row = g.w.w.row(i);
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) acc += row[j] * z[j];
            zn[i] = anchor[i] + g.lambdas.lambdas[i] * acc;
        }
        diff = max_abs_diff(zn, z);
        z.swap(zn);
        if (diff <= tol) return {OpinionVector(std::move(z)), it};
    }
    throw IterationDivergence("iterate_dynamics exceeded " + std::to_string(max_iter) +
                                  " iterations",
                              diff, std::move(z));
}

} // namespace fjpol

#endif // FJPOL_MODELS_HPP
