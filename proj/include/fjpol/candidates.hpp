#ifndef FJPOL_CANDIDATES_HPP
#define FJPOL_CANDIDATES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fjpol/errors.hpp"
#include "fjpol/linalg.hpp"
#include "fjpol/models.hpp"
#include "fjpol/rng.hpp"
#include "fjpol/spectral.hpp"

namespace fjpol {

enum class CandidateStatus { Ok, NotPolarizing, Unavailable };
enum class Provenance { Exact, Heuristic, Multistart };

inline const char* provenance_name(Provenance p) {
    switch (p) {
        case Provenance::Exact: return "exact";
        case Provenance::Heuristic: return "heuristic";
        case Provenance::Multistart: return "multistart";
    }
    return "?";
}

struct Candidate {
    std::string name;
    CandidateStatus status = CandidateStatus::Unavailable;
    Vec s;                    // positive branch; the negation polarizes equally
    double predicted_delta = 0.0;
    Provenance provenance = Provenance::Exact;
    bool certified = false;
    std::string note;
};

enum class BruteMetric { P2, P3, P4 };

inline const char* brute_metric_name(BruteMetric m) {
    switch (m) {
        case BruteMetric::P2: return "p2";
        case BruteMetric::P3: return "p3";
        case BruteMetric::P4: return "p4";
    }
    return "?";
}

// Δ_P3 and Δ_P4 evaluated directly through H.
inline double delta_p3(const ResponseMatrix& h, const Vec& s) {
    const Vec z = h.h * s;
    return dot(z, z) - dot(s, s);
}

inline double delta_p4(const ResponseMatrix& h, const Vec& s) {
    const Vec z = h.h * s;
    return norm1(z) - norm1(s);
}

inline double delta_metric(const ResponseMatrix& h, const Vec& s, BruteMetric m) {
    switch (m) {
        case BruteMetric::P2: return delta_p3(h, s) / static_cast<double>(s.size());
        case BruteMetric::P3: return delta_p3(h, s);
        case BruteMetric::P4: return delta_p4(h, s);
    }
    return 0.0;
}

namespace detail {

// Clamp an (approximately nonnegative) vector into [0, 1]. Entries below
// -tol are a hard error: candidates must live in the positive branch.
inline Vec clamp_unit_box(Vec v, double tol = 1e-9) {
    for (double& x : v) {
        if (x < -tol)
            throw NumericalError("candidate entry " + std::to_string(x) +
                                 " escapes the unit box");
        x = std::clamp(x, 0.0, 1.0);
    }
    return v;
}

} // namespace detail

// Leading eigenvector of H^T H: the unit-norm polarizer. Its shift is
// exactly σ1^2 - 1, which is verified against a direct evaluation.
inline Candidate candidate_b2_1(const ResponseMatrix& h, const SpectralBasis& basis) {
    Candidate c;
    c.name = "b2_1";
    c.provenance = Provenance::Exact;
    const double s1 = basis.sigmas.empty() ? 0.0 : basis.sigmas[0];
    if (!(s1 > 1.0 + kSigmaOneTol)) {
        c.status = CandidateStatus::NotPolarizing;
        c.note = "largest singular value does not exceed one";
        return c;
    }
    c.s = detail::clamp_unit_box(basis.vector(0));
    c.predicted_delta = s1 * s1 - 1.0;
    const double direct = delta_p3(h, c.s);
    if (std::abs(direct - c.predicted_delta) > 1e-8 * std::max(1.0, std::abs(c.predicted_delta)))
        throw NumericalError("b2_1 shift " + std::to_string(direct) +
                             " disagrees with σ1^2-1 = " + std::to_string(c.predicted_delta));
    c.status = CandidateStatus::Ok;
    c.certified = true;
    return c;
}

// b2_1 scaled so its largest entry reaches 1; the shift scales by t^2.
inline Candidate candidate_b2_t(const ResponseMatrix& h, const SpectralBasis& basis) {
    Candidate base = candidate_b2_1(h, basis);
    Candidate c;
    c.name = "b2_t";
    c.provenance = Provenance::Exact;
    if (base.status != CandidateStatus::Ok) {
        c.status = base.status;
        c.note = base.note;
        return c;
    }
    const double mx = *std::max_element(base.s.begin(), base.s.end());
    const double t = 1.0 / mx;
    c.s = base.s;
    for (double& x : c.s) x = std::min(1.0, x * t);
    c.predicted_delta = t * t * base.predicted_delta;
    const double direct = delta_p3(h, c.s);
    if (std::abs(direct - c.predicted_delta) > 1e-8 * std::max(1.0, std::abs(c.predicted_delta)))
        throw NumericalError("b2_t shift disagrees with t^2 (σ1^2-1)");
    c.status = CandidateStatus::Ok;
    c.certified = true;
    return c;
}

// Standard-basis vector on the heaviest column of H (smallest index wins
// ties); its total-opinion shift is exactly ||H||_1 - 1.
inline Candidate candidate_b1_1(const ResponseMatrix& h, double tol = 1e-9) {
    Candidate c;
    c.name = "b1_1";
    c.provenance = Provenance::Exact;
    const Vec cs = h.column_sums();
    std::size_t arg = 0;
    for (std::size_t j = 1; j < cs.size(); ++j)
        if (cs[j] > cs[arg]) arg = j;
    if (!(cs[arg] > 1.0 + tol)) {
        c.status = CandidateStatus::NotPolarizing;
        c.note = "no column sum exceeds one";
        return c;
    }
    c.s = Vec(cs.size(), 0.0);
    c.s[arg] = 1.0;
    c.predicted_delta = cs[arg] - 1.0;
    const double direct = delta_p4(h, c.s);
    if (std::abs(direct - c.predicted_delta) > 1e-9 * std::max(1.0, std::abs(c.predicted_delta)))
        throw NumericalError("b1_1 shift disagrees with ||H||_1 - 1");
    c.status = CandidateStatus::Ok;
    c.certified = true;
    c.note = "column " + std::to_string(arg);
    return c;
}

// Global maximizer of the total-opinion shift. The objective is linear in s
// with coefficients c'_j = Σ_i (σ_i^2 - 1) <v_i, 1> v_i^(j), so after the
// orthogonal change of variables the box optimum is the indicator of the
// positive coefficients. No LP solver needed.
inline Candidate candidate_lp_p4(const ResponseMatrix& h, const SpectralBasis& basis) {
    const std::size_t n = basis.size();
    Candidate c;
    c.name = "max_p4";
    c.provenance = Provenance::Exact;
    const Vec ones(n, 1.0);
    const Vec dots = basis.coefficients(ones); // <v_i, 1>
    Vec scaled(n);
    for (std::size_t i = 0; i < n; ++i)
        scaled[i] = (basis.sigmas[i] * basis.sigmas[i] - 1.0) * dots[i];
    const Vec cprime = basis.reconstruct(scaled);
    c.s = Vec(n, 0.0);
    c.predicted_delta = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (cprime[j] > 1e-12) {
            c.s[j] = 1.0;
            c.predicted_delta += cprime[j];
        }
    }
    const double direct = delta_p4(h, c.s);
    if (std::abs(direct - c.predicted_delta) > 1e-8 * std::max(1.0, std::abs(c.predicted_delta)))
        throw NumericalError("max_p4 shift disagrees with its linear objective");
    c.status = CandidateStatus::Ok;
    c.certified = true;
    return c;
}

// |s| polarizes at least as much as s for the absolute/total classes.
inline Vec concordance_lift(const Vec& s, const ResponseMatrix& h, BruteMetric metric) {
    Vec a = s;
    for (double& x : a) x = std::abs(x);
    const double lifted = delta_metric(h, a, metric);
    const double original = delta_metric(h, s, metric);
    if (lifted < original - 1e-9)
        throw NumericalError("concordance lift decreased the shift by " +
                             std::to_string(original - lifted));
    return a;
}

// Greedy subspace walk: start from b2_t and, for each remaining eigenvector
// with σ > 1 in index order, take the longest feasible step s + γ(±v) inside
// the unit box, keep it when the shift improves, then rescale so some entry
// sits at 1. Each accepted step adds γ^2 (σ^2 - 1); the result never falls
// below b2_t.
inline Candidate heuristic_v_gt1(const ResponseMatrix& h, const SpectralBasis& basis) {
    Candidate c;
    c.name = "v_gt1_heu";
    c.provenance = Provenance::Heuristic;
    const std::size_t l = basis.count_above_one();
    if (l == 0) {
        c.status = CandidateStatus::NotPolarizing;
        c.note = "largest singular value does not exceed one";
        return c;
    }
    const Candidate start = candidate_b2_t(h, basis);
    Vec s = start.s;
    double best = delta_p3(h, s);
    const std::size_t n = s.size();

    for (std::size_t k = 1; k < l; ++k) {
        const Vec v = basis.vector(k);
        Vec accepted;
        double accepted_delta = best;
        for (const double dir : {+1.0, -1.0}) {
            double gamma = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < n; ++i) {
                const double vi = dir * v[i];
                if (vi > 1e-15) gamma = std::min(gamma, (1.0 - s[i]) / vi);
                else if (vi < -1e-15) gamma = std::min(gamma, s[i] / (-vi));
            }
            if (!std::isfinite(gamma) || !(gamma > 1e-12)) continue;
            Vec cand(n);
            for (std::size_t i = 0; i < n; ++i)
                cand[i] = std::clamp(s[i] + gamma * dir * v[i], 0.0, 1.0);
            const double mx = *std::max_element(cand.begin(), cand.end());
            if (mx > 1e-12 && mx < 1.0)
                for (double& x : cand) x = std::min(1.0, x / mx);
            const double d = delta_p3(h, cand);
            if (d > accepted_delta) {
                accepted_delta = d;
                accepted = std::move(cand);
            }
        }
        if (!accepted.empty()) {
            s = std::move(accepted);
            best = accepted_delta;
        }
    }
    c.s = std::move(s);
    c.predicted_delta = best;
    c.status = CandidateStatus::Ok;
    return c;
}

namespace detail {

// Solve a small dense system in place; returns false when singular.
inline bool solve_small(std::vector<double>& m, std::vector<double>& rhs, std::size_t l) {
    for (std::size_t k = 0; k < l; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < l; ++i)
            if (std::abs(m[i * l + k]) > std::abs(m[p * l + k])) p = i;
        if (std::abs(m[p * l + k]) < 1e-12) return false;
        if (p != k) {
            for (std::size_t j = 0; j < l; ++j) std::swap(m[k * l + j], m[p * l + j]);
            std::swap(rhs[k], rhs[p]);
        }
        for (std::size_t i = k + 1; i < l; ++i) {
            const double f = m[i * l + k] / m[k * l + k];
            if (f == 0.0) continue;
            for (std::size_t j = k; j < l; ++j) m[i * l + j] -= f * m[k * l + j];
            rhs[i] -= f * rhs[k];
        }
    }
    for (std::size_t i = l; i-- > 0;) {
        double acc = rhs[i];
        for (std::size_t j = i + 1; j < l; ++j) acc -= m[i * l + j] * rhs[j];
        rhs[i] = acc / m[i * l + i];
    }
    return true;
}

inline double combination_count(std::size_t n, std::size_t l) {
    double c = 1.0;
    for (std::size_t i = 0; i < l; ++i) c = c * static_cast<double>(n - i) / static_cast<double>(i + 1);
    return c;
}

// Projection onto box ∩ subspace via Dykstra's alternating projections.
inline Vec project_box_subspace(const Mat& bhat, Vec x, int rounds = 80) {
    const std::size_t n = x.size();
    Vec p(n, 0.0), q(n, 0.0);
    Vec t(n);
    for (int r = 0; r < rounds; ++r) {
        Vec y(n);
        for (std::size_t i = 0; i < n; ++i) y[i] = std::clamp(x[i] + p[i], 0.0, 1.0);
        for (std::size_t i = 0; i < n; ++i) p[i] = x[i] + p[i] - y[i];
        for (std::size_t i = 0; i < n; ++i) t[i] = y[i] + q[i];
        Vec coords = transpose_times(bhat, t);
        Vec z = bhat * coords;
        double moved = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            q[i] = y[i] + q[i] - z[i];
            moved = std::max(moved, std::abs(z[i] - x[i]));
            x[i] = z[i];
        }
        if (moved < 1e-13) break;
    }
    for (double& v : x) v = std::clamp(v, 0.0, 1.0);
    return x;
}

// Projected-gradient ascent of s ↦ ||Hs||^2 - ||s||^2 over box (optionally
// intersected with a subspace). Monotone thanks to backtracking.
inline std::pair<Vec, double> projected_gradient(const ResponseMatrix& h,
                                                 const Mat* bhat, Vec s,
                                                 int max_iters) {
    auto project = [&](Vec x) {
        if (bhat) return project_box_subspace(*bhat, std::move(x));
        for (double& v : x) v = std::clamp(v, 0.0, 1.0);
        return x;
    };
    s = project(std::move(s));
    double f = delta_p3(h, s);
    double eta = 0.25;
    for (int it = 0; it < max_iters; ++it) {
        Vec grad = transpose_times(h.h, h.h * s);
        for (std::size_t i = 0; i < s.size(); ++i) grad[i] = 2.0 * (grad[i] - s[i]);
        bool stepped = false;
        while (eta > 1e-12) {
            Vec cand(s.size());
            for (std::size_t i = 0; i < s.size(); ++i) cand[i] = s[i] + eta * grad[i];
            cand = project(std::move(cand));
            const double fc = delta_p3(h, cand);
            if (fc > f + 1e-14) {
                s = std::move(cand);
                f = fc;
                eta *= 1.5;
                stepped = true;
                break;
            }
            eta *= 0.5;
        }
        if (!stepped) break;
    }
    return {std::move(s), f};
}

} // namespace detail

enum class SubspaceMode { StrictlyGreater, GreaterOrEqual };

struct OptimOptions {
    double vertex_budget = 2e6;   // max active-set combinations to enumerate
    int restarts = 12;            // multistart count for gradient fallbacks
    int pg_iters = 2500;
    std::uint64_t seed = 1;
};

// Maximizer of Σ α_i^2 (σ_i^2 - 1) over the slice of the unit box spanned by
// the σ > 1 eigenvectors. Exact when the active-set enumeration fits the
// budget (the maximum of a convex function over a polytope sits at a
// vertex); otherwise best-of multistart ascent, flagged uncertified.
// GreaterOrEqual mode then walks the σ = 1 directions, which leave the shift
// flat, picking the feasible offset with the best directly-evaluated
// total-opinion shift.
inline Candidate candidate_subspace_qp(const ResponseMatrix& h, const SpectralBasis& basis,
                                       SubspaceMode mode, const OptimOptions& opt = {}) {
    Candidate c;
    c.name = mode == SubspaceMode::StrictlyGreater ? "v_gt1" : "v_ge1";
    const std::size_t n = basis.size();
    const std::size_t l = basis.count_above_one();
    if (l < 2) {
        c.status = CandidateStatus::Unavailable;
        c.note = "needs at least two singular values above one";
        return c;
    }
    Mat bhat(n, l);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < l; ++k) bhat(i, k) = basis.b(i, k);
    Vec sig2m1(l);
    for (std::size_t k = 0; k < l; ++k)
        sig2m1[k] = basis.sigmas[k] * basis.sigmas[k] - 1.0;

    Vec best_s;
    double best = -std::numeric_limits<double>::infinity();
    bool exact_ran = false;

    const double combos = detail::combination_count(n, l) * std::pow(2.0, static_cast<double>(l));
    if (combos <= opt.vertex_budget) {
        exact_ran = true;
        std::vector<std::size_t> rows(l);
        for (std::size_t k = 0; k < l; ++k) rows[k] = k;
        std::vector<double> msmall(l * l), rhs(l);
        while (true) {
            for (std::uint32_t bits = 0; bits < (1u << l); ++bits) {
                for (std::size_t k = 0; k < l; ++k) {
                    for (std::size_t j = 0; j < l; ++j) msmall[k * l + j] = bhat(rows[k], j);
                    rhs[k] = (bits >> k) & 1u ? 1.0 : 0.0;
                }
                std::vector<double> alpha = rhs;
                std::vector<double> mm = msmall;
                if (!detail::solve_small(mm, alpha, l)) continue;
                Vec s(n, 0.0);
                bool feasible = true;
                for (std::size_t i = 0; i < n && feasible; ++i) {
                    double acc = 0.0;
                    for (std::size_t k = 0; k < l; ++k) acc += bhat(i, k) * alpha[k];
                    if (acc < -1e-9 || acc > 1.0 + 1e-9) feasible = false;
                    s[i] = std::clamp(acc, 0.0, 1.0);
                }
                if (!feasible) continue;
                double val = 0.0;
                for (std::size_t k = 0; k < l; ++k) val += alpha[k] * alpha[k] * sig2m1[k];
                if (val > best) {
                    best = val;
                    best_s = std::move(s);
                }
            }
            // next combination of l rows out of n
            bool advanced = false;
            for (std::size_t k = l; k-- > 0;) {
                if (rows[k] + (l - k) < n) {
                    ++rows[k];
                    for (std::size_t j = k + 1; j < l; ++j) rows[j] = rows[j - 1] + 1;
                    advanced = true;
                    break;
                }
            }
            if (!advanced) break;
        }
    }

    // gradient polish / fallback, seeded with b2_t and random feasible points
    SplitMix64 rng(opt.seed);
    std::vector<Vec> seeds;
    const Candidate b2t = candidate_b2_t(h, basis);
    if (b2t.status == CandidateStatus::Ok) seeds.push_back(b2t.s);
    if (!best_s.empty()) seeds.push_back(best_s);
    for (int r = 0; r < opt.restarts; ++r) {
        Vec x(n);
        for (double& v : x) v = rng.next_double();
        seeds.push_back(std::move(x));
    }
    for (const Vec& seed : seeds) {
        auto [s, val] = detail::projected_gradient(h, &bhat, seed, opt.pg_iters);
        if (val > best) {
            best = val;
            best_s = std::move(s);
        }
    }
    if (best_s.empty()) {
        c.status = CandidateStatus::Unavailable;
        c.note = "optimizer produced no feasible point";
        return c;
    }

    c.certified = exact_ran;
    c.provenance = exact_ran ? Provenance::Exact : Provenance::Multistart;

    if (mode == SubspaceMode::GreaterOrEqual) {
        // The shift is flat along σ = 1 eigenvectors; pick offsets by the
        // directly evaluated total-opinion shift (ties keep zero offset).
        for (std::size_t idx : basis.indices_equal_one()) {
            const Vec v = basis.vector(idx);
            double lo = -std::numeric_limits<double>::infinity();
            double hi = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < n; ++i) {
                if (v[i] > 1e-15) {
                    hi = std::min(hi, (1.0 - best_s[i]) / v[i]);
                    lo = std::max(lo, (0.0 - best_s[i]) / v[i]);
                } else if (v[i] < -1e-15) {
                    hi = std::min(hi, (0.0 - best_s[i]) / v[i]);
                    lo = std::max(lo, (1.0 - best_s[i]) / v[i]);
                }
            }
            if (!(hi >= lo)) continue; // infeasible augmentation: keep as is
            double best_gamma = 0.0;
            double best_p4 = delta_p4(h, best_s);
            for (const double gamma : {lo, hi, 0.5 * (lo + hi)}) {
                if (!std::isfinite(gamma) || gamma == 0.0) continue;
                Vec cand(n);
                for (std::size_t i = 0; i < n; ++i)
                    cand[i] = std::clamp(best_s[i] + gamma * v[i], 0.0, 1.0);
                const double p4 = delta_p4(h, cand);
                if (p4 > best_p4 + 1e-12) {
                    best_p4 = p4;
                    best_gamma = gamma;
                }
            }
            if (best_gamma != 0.0)
                for (std::size_t i = 0; i < n; ++i)
                    best_s[i] = std::clamp(best_s[i] + best_gamma * v[i], 0.0, 1.0);
        }
        best = delta_p3(h, best_s);
    }

    c.s = std::move(best_s);
    c.predicted_delta = best;
    c.status = CandidateStatus::Ok;
    return c;
}

// Exhaustive search for the best shift over the grid {0, 1/g, ..., 1}^n
// (n <= 12), or over the box vertices alone for n <= 20. Deterministic;
// ties keep the lexicographically smallest vector.
inline Candidate brute_force_max(const ResponseMatrix& h, BruteMetric metric, int grid) {
    Candidate c;
    c.name = std::string("brute_") + brute_metric_name(metric);
    c.provenance = Provenance::Exact;
    const std::size_t n = h.size();
    const bool grid_mode = n <= 12 && grid >= 1;
    if (!grid_mode && n > 20) {
        c.status = CandidateStatus::Unavailable;
        c.note = "instance too large for exhaustive search";
        return c;
    }
    const int g = grid_mode ? grid : 1;

    Vec s(n, 0.0);
    Vec best_s;
    double best = -std::numeric_limits<double>::infinity();
    std::vector<Vec> cols(n);
    for (std::size_t j = 0; j < n; ++j) cols[j] = h.h.col(j);

    auto eval = [&](const Vec& z) {
        double d;
        if (metric == BruteMetric::P4) d = norm1(z) - norm1(s);
        else d = dot(z, z) - dot(s, s);
        if (metric == BruteMetric::P2) d /= static_cast<double>(n);
        if (d > best) {
            best = d;
            best_s = s;
        }
    };

    // depth-first over coordinates; each level extends a fresh copy of the
    // partial H s so rounding does not accumulate across the whole sweep
    auto rec = [&](auto&& self, std::size_t d, const Vec& z) -> void {
        if (d == n) {
            eval(z);
            return;
        }
        const Vec& col = cols[d];
        Vec zloc = z;
        const double step = 1.0 / static_cast<double>(g);
        for (int k = 0; k <= g; ++k) {
            s[d] = static_cast<double>(k) / static_cast<double>(g);
            if (k > 0)
                for (std::size_t i = 0; i < n; ++i) zloc[i] += step * col[i];
            self(self, d + 1, zloc);
        }
        s[d] = 0.0;
    };
    rec(rec, 0, Vec(n, 0.0));

    c.s = std::move(best_s);
    c.predicted_delta = best;
    c.status = CandidateStatus::Ok;
    c.certified = true;
    c.note = grid_mode ? "grid " + std::to_string(g) : "vertices only";
    return c;
}

// Global absolute-class search. Small instances get a zooming grid plus the
// box vertices (resolution shrinks geometrically per round); larger ones a
// seeded multistart ascent, flagged uncertified.
inline Candidate global_p23_search(const ResponseMatrix& h, int budget,
                                   std::size_t n_exact_limit = 12,
                                   const std::vector<Vec>& seeds = {},
                                   std::uint64_t seed = 1) {
    Candidate c;
    c.name = "max_p23";
    const std::size_t n = h.size();
    if (budget <= 0) {
        c.status = CandidateStatus::Unavailable;
        c.note = "zero budget";
        return c;
    }

    if (n <= n_exact_limit) {
        const double evals = 300000.0;
        int g = static_cast<int>(std::floor(std::pow(evals, 1.0 / static_cast<double>(n)))) - 1;
        g = std::clamp(g, 2, 64);

        Vec best_s(n, 0.0);
        double best = 0.0; // Δ at s = 0
        for (const Vec& s : seeds) {
            if (s.size() != n) continue;
            const double d = delta_p3(h, s);
            if (d > best) { best = d; best_s = s; }
        }

        Vec lo(n, 0.0), hi(n, 1.0);
        for (int round = 0; round < 3; ++round) {
            Vec s(n, 0.0);
            auto rec = [&](auto&& self, std::size_t d) -> void {
                if (d == n) {
                    const double val = delta_p3(h, s);
                    if (val > best) { best = val; best_s = s; }
                    return;
                }
                for (int k = 0; k <= g; ++k) {
                    s[d] = lo[d] + (hi[d] - lo[d]) * static_cast<double>(k) /
                                       static_cast<double>(g);
                    self(self, d + 1);
                }
            };
            rec(rec, 0);
            for (std::size_t i = 0; i < n; ++i) {
                const double step = (hi[i] - lo[i]) / static_cast<double>(g);
                lo[i] = std::clamp(best_s[i] - 1.5 * step, 0.0, 1.0);
                hi[i] = std::clamp(best_s[i] + 1.5 * step, 0.0, 1.0);
            }
        }
        // box vertices (they are the only candidates the grid could have
        // missed at full extremes after zooming)
        if (n <= 20) {
            Vec s(n, 0.0);
            for (std::uint64_t bits = 0; bits < (1ull << n); ++bits) {
                for (std::size_t i = 0; i < n; ++i) s[i] = (bits >> i) & 1ull ? 1.0 : 0.0;
                const double val = delta_p3(h, s);
                if (val > best) { best = val; best_s = s; }
            }
        }
        c.s = std::move(best_s);
        c.predicted_delta = best;
        c.status = CandidateStatus::Ok;
        c.certified = true;
        c.provenance = Provenance::Exact;
        c.note = "zoomed grid, base step 1/" + std::to_string(g);
        return c;
    }

    SplitMix64 rng(seed);
    Vec best_s;
    double best = -std::numeric_limits<double>::infinity();
    std::vector<Vec> starts = seeds;
    for (int r = 0; r < budget; ++r) {
        Vec x(n);
        for (double& v : x) v = rng.next_double();
        starts.push_back(std::move(x));
    }
    for (const Vec& s0 : starts) {
        if (s0.size() != n) continue;
        auto [s, val] = detail::projected_gradient(h, nullptr, s0, 4000);
        if (val > best) {
            best = val;
            best_s = std::move(s);
        }
    }
    c.s = std::move(best_s);
    c.predicted_delta = best;
    c.status = CandidateStatus::Ok;
    c.certified = false;
    c.provenance = Provenance::Multistart;
    c.note = "multistart ascent, " + std::to_string(budget) + " restarts";
    return c;
}

} // namespace fjpol

#endif // FJPOL_CANDIDATES_HPP
