#ifndef FJPOL_GRAPH_HPP
#define FJPOL_GRAPH_HPP

#include <cmath>
#include <cstddef>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fjpol/errors.hpp"
#include "fjpol/linalg.hpp"

namespace fjpol {

constexpr double kStubbornSelfWeight = std::numeric_limits<double>::infinity();

struct Edge {
    std::size_t from;
    std::size_t to;
    double weight;
};

// Social graph: directed arc list plus optional per-node self-weights.
// A self-weight of kStubbornSelfWeight marks a fully anchored node.
struct SocialGraph {
    std::size_t n = 0;
    std::vector<Edge> edges;                         // directed arcs, no self-arcs
    bool directed = false;
    std::optional<std::vector<double>> self_weights; // size n when present

    bool has_self_weights() const { return self_weights.has_value(); }

    double self_weight(std::size_t i) const {
        return self_weights ? (*self_weights)[i] : 0.0;
    }

    // ŵ as a dense matrix, self-weights on the diagonal (infinities included).
    Mat social_matrix() const {
        Mat w(n, n);
        for (const Edge& e : edges) w(e.from, e.to) = e.weight;
        if (self_weights)
            for (std::size_t i = 0; i < n; ++i) w(i, i) = (*self_weights)[i];
        return w;
    }

    double out_weight_sum(std::size_t i) const {
        double s = 0.0;
        for (const Edge& e : edges)
            if (e.from == i) s += e.weight;
        return s;
    }
};

inline void validate(const SocialGraph& g) {
    if (g.n == 0) throw ValidationError("empty graph");
    std::set<std::pair<std::size_t, std::size_t>> seen;
    std::vector<double> out(g.n, 0.0);
    for (const Edge& e : g.edges) {
        if (e.from >= g.n || e.to >= g.n)
            throw ValidationError("edge index out of range");
        if (e.from == e.to)
            throw ValidationError("self-arcs must be declared as self-weights");
        if (!(e.weight >= 0.0))
            throw ValidationError("negative edge weight on (" + std::to_string(e.from) +
                                  ", " + std::to_string(e.to) + ")");
        if (!seen.insert({e.from, e.to}).second)
            throw ValidationError("duplicate edge (" + std::to_string(e.from) + ", " +
                                  std::to_string(e.to) + ")");
        out[e.from] += e.weight;
    }
    if (!g.directed) {
        Mat w(g.n, g.n);
        for (const Edge& e : g.edges) w(e.from, e.to) = e.weight;
        for (const Edge& e : g.edges)
            if (w(e.to, e.from) != e.weight)
                throw ValidationError("undirected graph has asymmetric weights at (" +
                                      std::to_string(e.from) + ", " + std::to_string(e.to) + ")");
    }
    if (g.self_weights) {
        if (g.self_weights->size() != g.n)
            throw ValidationError("self-weight vector size mismatch");
        for (std::size_t i = 0; i < g.n; ++i) {
            const double w = (*g.self_weights)[i];
            if (!(w >= 0.0))
                throw ValidationError("negative self-weight on node " + std::to_string(i));
            out[i] += std::isinf(w) ? 1.0 : w;
        }
    }
    for (std::size_t i = 0; i < g.n; ++i)
        if (!(out[i] > 0.0))
            throw ValidationError("node " + std::to_string(i) + " has zero out-weight");
}

struct EdgeListFormat {
    bool directed = false;
    double default_weight = 1.0;
};

namespace detail {

inline std::vector<std::string> split_fields(const std::string& line) {
    std::string cleaned;
    cleaned.reserve(line.size());
    for (char c : line) cleaned.push_back(c == ',' ? ' ' : c);
    std::istringstream ss(cleaned);
    std::vector<std::string> fields;
    std::string f;
    while (ss >> f) fields.push_back(f);
    return fields;
}

inline double parse_weight(const std::string& tok, long line_no) {
    if (tok == "inf" || tok == "Inf" || tok == "INF" || tok == "infinity")
        return kStubbornSelfWeight;
    try {
        std::size_t pos = 0;
        double w = std::stod(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return w;
    } catch (const std::exception&) {
        throw ParseError("malformed weight '" + tok + "'", line_no);
    }
}

inline long parse_node(const std::string& tok, long line_no) {
    try {
        std::size_t pos = 0;
        long v = std::stol(tok, &pos);
        if (pos != tok.size() || v < 0) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError("malformed node index '" + tok + "'", line_no);
    }
}

} // namespace detail

// Text format: one edge per line, "i j [w]", fields separated by whitespace
// or commas, '#' starts a comment. A line "i i w" declares the self-weight
// of node i ("inf" marks an anchored node). Node labels are arbitrary
// nonnegative integers; labels appearing only in self-weight lines count as
// isolated and are dropped, and surviving labels are compacted to [0, n).
inline SocialGraph load_edge_list(std::istream& in, const EdgeListFormat& fmt = {}) {
    struct RawEdge { long a, b; double w; long line; };
    std::vector<RawEdge> raw;
    std::map<long, double> raw_self;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        const auto fields = detail::split_fields(line);
        if (fields.empty()) continue;
        if (fields.size() < 2 || fields.size() > 3)
            throw ParseError("expected 'i j [w]', got " + std::to_string(fields.size()) +
                             " fields", line_no);
        const long a = detail::parse_node(fields[0], line_no);
        const long b = detail::parse_node(fields[1], line_no);
        double w = fmt.default_weight;
        if (fields.size() == 3) w = detail::parse_weight(fields[2], line_no);
        if (!(w >= 0.0))
            throw ValidationError("line " + std::to_string(line_no) +
                                  ": negative weight " + fields[2]);
        if (a == b) {
            if (!raw_self.emplace(a, w).second)
                throw ValidationError("line " + std::to_string(line_no) +
                                      ": duplicate self-weight for node " + std::to_string(a));
        } else {
            raw.push_back({a, b, w, line_no});
        }
    }
    if (raw.empty()) throw ValidationError("empty graph: no edges found");

    // isolated-node removal + index compaction (labels in edge lines only)
    std::map<long, std::size_t> compact;
    for (const RawEdge& e : raw) {
        compact.emplace(e.a, 0);
        compact.emplace(e.b, 0);
    }
    std::size_t next = 0;
    for (auto& [label, idx] : compact) idx = next++;

    SocialGraph g;
    g.n = compact.size();
    g.directed = fmt.directed;
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const RawEdge& e : raw) {
        const std::size_t i = compact.at(e.a), j = compact.at(e.b);
        if (!seen.insert({i, j}).second || (!fmt.directed && seen.count({j, i})))
            throw ValidationError("line " + std::to_string(e.line) + ": duplicate edge " +
                                  std::to_string(e.a) + " " + std::to_string(e.b));
        g.edges.push_back({i, j, e.w});
        if (!fmt.directed) {
            seen.insert({j, i});
            g.edges.push_back({j, i, e.w});
        }
    }
    bool any_self = false;
    std::vector<double> sw(g.n, 0.0);
    for (const auto& [label, w] : raw_self) {
        auto it = compact.find(label);
        if (it == compact.end()) continue; // self-weight on an isolated node
        sw[it->second] = w;
        any_self = true;
    }
    if (any_self) g.self_weights = std::move(sw);
    validate(g);
    return g;
}

// Row-stochastic influence matrix, entries in [0, 1].
struct InfluenceMatrix {
    Mat w;

    static InfluenceMatrix from_matrix(Mat m, double tol = 1e-12) {
        for (std::size_t i = 0; i < m.rows(); ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < m.cols(); ++j) {
                if (m(i, j) < -tol)
                    throw ValidationError("negative influence entry at row " + std::to_string(i));
                if (m(i, j) < 0.0) m(i, j) = 0.0;
                s += m(i, j);
            }
            if (std::abs(s - 1.0) > tol)
                throw ValidationError("influence row " + std::to_string(i) +
                                      " sums to " + std::to_string(s));
        }
        return InfluenceMatrix{std::move(m)};
    }

    std::size_t size() const { return w.rows(); }
};

// w_ij = ŵ_ij / Σ_k ŵ_ik. The diagonal participates only when the graph
// declares self-weights; an anchored self-weight turns the row into e_i.
inline InfluenceMatrix row_normalize(const SocialGraph& g) {
    validate(g);
    Mat w(g.n, g.n);
    std::vector<double> sum(g.n, 0.0);
    for (const Edge& e : g.edges) {
        w(e.from, e.to) = e.weight;
        sum[e.from] += e.weight;
    }
    for (std::size_t i = 0; i < g.n; ++i) {
        if (g.has_self_weights()) {
            const double sw = g.self_weight(i);
            if (std::isinf(sw)) {
                for (std::size_t j = 0; j < g.n; ++j) w(i, j) = 0.0;
                w(i, i) = 1.0;
                continue;
            }
            w(i, i) = sw;
            sum[i] += sw;
        }
        if (!(sum[i] > 0.0))
            throw ValidationError("node " + std::to_string(i) + " has zero out-weight sum");
        for (std::size_t j = 0; j < g.n; ++j) w(i, j) /= sum[i];
    }
    return InfluenceMatrix::from_matrix(std::move(w));
}

// PageRank on the row-normalized graph. Deterministic iteration order, so
// repeated runs are bit-identical.
inline Vec pagerank(const SocialGraph& g, double damping = 0.85, double tol = 1e-12,
                    int max_iter = 10000) {
    if (!(damping > 0.0 && damping < 1.0))
        throw ValidationError("damping must lie in (0, 1)");
    const InfluenceMatrix w = row_normalize(g);
    const std::size_t n = g.n;
    Vec x(n, 1.0 / static_cast<double>(n));
    const double teleport = (1.0 - damping) / static_cast<double>(n);
    for (int it = 0; it < max_iter; ++it) {
        Vec y = transpose_times(w.w, x);
        double diff = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = damping * y[i] + teleport;
            diff += std::abs(y[i] - x[i]);
        }
        x.swap(y);
        if (diff < tol) return x;
    }
    throw ConvergenceError("pagerank did not converge within " + std::to_string(max_iter) +
                               " iterations",
                           tol);
}

enum class SusceptibilityScheme { Constant, PageRankProportional, PageRankInverse, Explicit };

struct SusceptibilityProfile {
    Vec lambdas;
    SusceptibilityScheme scheme = SusceptibilityScheme::Explicit;

    static SusceptibilityProfile explicit_profile(Vec lam) {
        for (double l : lam)
            if (!(l >= 0.0 && l <= 1.0))
                throw ValidationError("susceptibility outside [0, 1]");
        return {std::move(lam), SusceptibilityScheme::Explicit};
    }

    std::size_t size() const { return lambdas.size(); }
};

// Affine min-max rescale of the centrality (or its reciprocal) into
// [epsilon, 1 - epsilon], so rescaled nodes are never exactly anchored or
// exactly oblivious to their own prejudice.
inline SusceptibilityProfile build_susceptibility(const Vec& centrality,
                                                  SusceptibilityScheme scheme,
                                                  double epsilon = 0.01,
                                                  double constant = 0.8) {
    if (scheme == SusceptibilityScheme::Explicit)
        throw ValidationError("build_susceptibility does not take explicit profiles");
    if (scheme == SusceptibilityScheme::Constant) {
        if (!(constant >= 0.0 && constant <= 1.0))
            throw ValidationError("constant susceptibility outside [0, 1]");
        return {Vec(centrality.size(), constant), scheme};
    }
    if (!(epsilon > 0.0 && epsilon < 0.5))
        throw ValidationError("epsilon must lie in (0, 0.5)");
    Vec v = centrality;
    for (double& c : v) {
        if (!(c > 0.0)) throw ValidationError("centrality entries must be positive");
        if (scheme == SusceptibilityScheme::PageRankInverse) c = 1.0 / c;
    }
    const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    if (!(*mx - *mn > 0.0))
        throw ValidationError("degenerate centrality (all equal); use the constant scheme");
    const double range = *mx - *mn;
    Vec lam(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        lam[i] = epsilon + (1.0 - 2.0 * epsilon) * (v[i] - *mn) / range;
    return {std::move(lam), scheme};
}

// Override file: one "index lambda" pair per line; every node exactly once.
inline SusceptibilityProfile load_susceptibility_file(std::istream& in, std::size_t n) {
    Vec lam(n, -1.0);
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        const auto fields = detail::split_fields(line);
        if (fields.empty()) continue;
        if (fields.size() != 2)
            throw ParseError("expected 'index lambda'", line_no);
        const long idx = detail::parse_node(fields[0], line_no);
        const double l = detail::parse_weight(fields[1], line_no);
        if (idx >= static_cast<long>(n))
            throw ValidationError("line " + std::to_string(line_no) + ": index " +
                                  std::to_string(idx) + " out of range");
        if (!(l >= 0.0 && l <= 1.0))
            throw ValidationError("line " + std::to_string(line_no) +
                                  ": susceptibility outside [0, 1]");
        if (lam[idx] >= 0.0)
            throw ValidationError("line " + std::to_string(line_no) + ": duplicate index " +
                                  std::to_string(idx));
        lam[idx] = l;
    }
    for (std::size_t i = 0; i < n; ++i)
        if (lam[i] < 0.0)
            throw ValidationError("susceptibility file misses node " + std::to_string(i));
    return SusceptibilityProfile{std::move(lam), SusceptibilityScheme::Explicit};
}

// Opinions live in [-1, 1]; entries are validated with a small tolerance and
// then clamped.
class OpinionVector {
  public:
    OpinionVector() = default;
    explicit OpinionVector(Vec values, double tol = 1e-9) : v_(std::move(values)) {
        for (double& x : v_) {
            if (!(std::abs(x) <= 1.0 + tol))
                throw ValidationError("opinion entry " + std::to_string(x) +
                                      " outside [-1, 1]");
            x = std::clamp(x, -1.0, 1.0);
        }
    }

    const Vec& values() const { return v_; }
    std::size_t size() const { return v_.size(); }
    double operator[](std::size_t i) const { return v_[i]; }

  private:
    Vec v_;
};

} // namespace fjpol

#endif // FJPOL_GRAPH_HPP
