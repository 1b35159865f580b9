#ifndef FJPOL_METRICS_HPP
#define FJPOL_METRICS_HPP

#include <cmath>
#include <cstddef>
#include <vector>

#include "fjpol/errors.hpp"
#include "fjpol/graph.hpp"
#include "fjpol/linalg.hpp"

namespace fjpol {

// The six polarization indices of one opinion vector.
//   ndi: Σ_{(i,j) arcs} w_ij (x_i - x_j)^2   (influence-weighted, local)
//   gdi: Σ_{i<j} (x_i - x_j)^2 over all node pairs
//   p1:  ||x - x̄||^2      p2: ||x||^2 / n      p3: ||x||^2      p4: ||x||_1
struct MetricsBundle {
    double ndi = 0.0;
    double gdi = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
    double p3 = 0.0;
    double p4 = 0.0;
    double total_opinion = 0.0; // Σ x_i
};

inline MetricsBundle metrics_bundle(const OpinionVector& x, const InfluenceMatrix& w,
                                    const std::vector<Edge>& edges) {
    const std::size_t n = x.size();
    if (n == 0) throw ValidationError("empty opinion vector");
    if (w.size() != 0 && w.size() != n)
        throw ValidationError("influence matrix size does not match opinion vector");
    MetricsBundle m;
    for (const Edge& e : edges) {
        if (e.from >= n || e.to >= n) throw ValidationError("edge index out of range");
        const double d = x[e.from] - x[e.to];
        m.ndi += w.w(e.from, e.to) * d * d;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = x[i];
        sum += v;
        m.p3 += v * v;
        m.p4 += std::abs(v);
    }
    m.total_opinion = sum;
    m.p2 = m.p3 / static_cast<double>(n);
    const double mean = sum / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = x[i] - mean;
        m.p1 += d * d;
    }
    // all unordered pairs, not just graph edges
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = x[i] - x[j];
            m.gdi += d * d;
        }
    return m;
}

// Metric-only version for contexts without a graph (ndi = 0).
inline MetricsBundle metrics_bundle(const OpinionVector& x) {
    return metrics_bundle(x, InfluenceMatrix{}, {});
}

struct MetricDeltas {
    double p1 = 0.0, p2 = 0.0, p3 = 0.0, p4 = 0.0, ndi = 0.0, gdi = 0.0;
};

constexpr double kPolarizingFlagTol = 1e-12;

struct ShiftReport {
    MetricDeltas delta;
    double choice_shift = 0.0; // Σ z - Σ s
    bool polarizing_p1 = false, polarizing_p2 = false, polarizing_p3 = false,
         polarizing_p4 = false, polarizing_ndi = false, polarizing_gdi = false;
};

inline ShiftReport shift_report(const OpinionVector& s, const OpinionVector& z,
                                const InfluenceMatrix& w, const std::vector<Edge>& edges) {
    if (s.size() != z.size()) throw ValidationError("opinion vector size mismatch");
    const MetricsBundle ms = metrics_bundle(s, w, edges);
    const MetricsBundle mz = metrics_bundle(z, w, edges);
    ShiftReport r;
    r.delta = {mz.p1 - ms.p1, mz.p2 - ms.p2, mz.p3 - ms.p3,
               mz.p4 - ms.p4, mz.ndi - ms.ndi, mz.gdi - ms.gdi};
    r.choice_shift = mz.total_opinion - ms.total_opinion;
    r.polarizing_p1 = r.delta.p1 > kPolarizingFlagTol;
    r.polarizing_p2 = r.delta.p2 > kPolarizingFlagTol;
    r.polarizing_p3 = r.delta.p3 > kPolarizingFlagTol;
    r.polarizing_p4 = r.delta.p4 > kPolarizingFlagTol;
    r.polarizing_ndi = r.delta.ndi > kPolarizingFlagTol;
    r.polarizing_gdi = r.delta.gdi > kPolarizingFlagTol;
    return r;
}

// P1(x) - P3(x) + P4(x)^2 / n. Nonnegative for every vector; zero exactly
// when the entries are sign-concordant.
inline double invariant_gap(const OpinionVector& x) {
    const MetricsBundle m = metrics_bundle(x);
    return m.p1 - m.p3 + m.p4 * m.p4 / static_cast<double>(x.size());
}

} // namespace fjpol

#endif // FJPOL_METRICS_HPP
