#pragma once

#include "sectional/error.hpp"
#include "sectional/graph.hpp"
#include "sectional/parallel.hpp"
#include "sectional/point_cloud.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sectional {

enum class GraphRule { knn, epsilon, adaptive };

/// Direction of the density-to-k interpolation in adaptive graphs.
/// ascending: denser points get k closer to k_max.
enum class DensityDirection { ascending, descending };

inline const char* to_string(GraphRule r) noexcept
{
    switch (r) {
    case GraphRule::knn: return "knn";
    case GraphRule::epsilon: return "epsilon";
    case GraphRule::adaptive: return "adaptive";
    }
    return "?";
}

struct GraphParams {
    GraphRule rule = GraphRule::knn;
    std::size_t k = 0;
    double eps = 0.0;
    std::size_t k_min = 0;
    std::size_t k_max = 0;
    DensityDirection direction = DensityDirection::ascending;
};

struct DensityScores {
    std::vector<double> raw;
    std::vector<double> normalized;
    std::vector<std::size_t> k_per_point;
};

struct NeighborhoodGraph {
    Graph graph;
    GraphParams params;
    std::optional<DensityScores> density; ///< adaptive rule only
};

namespace detail {

struct Ranked {
    double dist;
    std::size_t index;
    bool operator<(const Ranked& o) const noexcept
    {
        return dist < o.dist || (dist == o.dist && index < o.index);
    }
};

/// The k nearest neighbors of every point, nearest first, ties by index.
template <metric_source M>
std::vector<std::vector<Ranked>> nearest_neighbors(const M& metric, std::size_t k, unsigned workers)
{
    const std::size_t n = metric.size();
    std::vector<std::vector<Ranked>> out(n);
    parallel_for(n, workers, [&](std::size_t i) {
        std::vector<Ranked> all;
        all.reserve(n - 1);
        for (std::size_t j = 0; j < n; ++j)
            if (j != i)
                all.push_back({static_cast<double>(metric.distance(i, j)), j});
        std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end());
        all.resize(k);
        out[i] = std::move(all);
    });
    return out;
}

/// Symmetric union of per-point neighbor prefixes of length take[i].
inline Graph union_graph(const std::vector<std::vector<Ranked>>& nn,
                         const std::vector<std::size_t>& take)
{
    struct Key {
        std::size_t u, v;
        double w;
    };
    std::vector<Key> keys;
    for (std::size_t i = 0; i < nn.size(); ++i)
        for (std::size_t t = 0; t < take[i]; ++t) {
            std::size_t j = nn[i][t].index;
            keys.push_back({std::min(i, j), std::max(i, j), nn[i][t].dist});
        }
    std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
        return a.u < b.u || (a.u == b.u && a.v < b.v);
    });
    Graph g(nn.size());
    for (std::size_t t = 0; t < keys.size(); ++t)
        if (t == 0 || keys[t].u != keys[t - 1].u || keys[t].v != keys[t - 1].v)
            g.add_edge(keys[t].u, keys[t].v, keys[t].w);
    return g;
}

template <metric_source M>
void require_points(const M& metric)
{
    if (metric.size() < 2)
        throw parameter_error("graph construction needs at least 2 points");
}

} // namespace detail

/// Symmetric k-nearest-neighbor graph: (i, j) is an edge when either point
/// is among the other's k nearest.
template <metric_source M>
NeighborhoodGraph knn_graph(const M& metric, std::size_t k, unsigned workers = 0)
{
    detail::require_points(metric);
    const std::size_t n = metric.size();
    if (k < 1 || k >= n)
        throw parameter_error("knn_graph: k must satisfy 1 <= k < n (k=" + std::to_string(k) +
                              ", n=" + std::to_string(n) + ")");
    auto nn = detail::nearest_neighbors(metric, k, workers);
    NeighborhoodGraph out;
    out.graph = detail::union_graph(nn, std::vector<std::size_t>(n, k));
    out.params.rule = GraphRule::knn;
    out.params.k = k;
    return out;
}

/// All pairs within distance eps.
template <metric_source M>
NeighborhoodGraph epsilon_graph(const M& metric, double eps)
{
    detail::require_points(metric);
    if (!(eps > 0.0))
        throw parameter_error("epsilon_graph: eps must be positive");
    const std::size_t n = metric.size();
    NeighborhoodGraph out;
    out.graph = Graph(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double d = metric.distance(i, j);
            if (d <= eps)
                out.graph.add_edge(i, j, d);
        }
    out.params.rule = GraphRule::epsilon;
    out.params.eps = eps;
    return out;
}

/// Normalizes raw local densities and maps them to per-point neighbor counts.
inline DensityScores density_scores(std::vector<double> raw, std::size_t k_min, std::size_t k_max,
                                    DensityDirection direction = DensityDirection::ascending)
{
    DensityScores s;
    const std::size_t n = raw.size();
    s.raw = std::move(raw);
    s.normalized.assign(n, 0.5);
    if (n > 0) {
        auto [lo, hi] = std::minmax_element(s.raw.begin(), s.raw.end());
        double span = *hi - *lo;
        if (span > 0.0)
            for (std::size_t i = 0; i < n; ++i)
                s.normalized[i] = (s.raw[i] - *lo) / span;
    }
    s.k_per_point.resize(n);
    const double range = static_cast<double>(k_max - k_min);
    for (std::size_t i = 0; i < n; ++i) {
        double score = direction == DensityDirection::ascending ? s.normalized[i]
                                                                : 1.0 - s.normalized[i];
        s.k_per_point[i] =
            static_cast<std::size_t>(std::lround(static_cast<double>(k_min) + score * range));
    }
    return s;
}

/// Density-adaptive kNN graph.
///
/// Local density is the inverse mean distance to the k_max nearest
/// neighbors. Each point connects to its k_i nearest neighbors, where k_i
/// interpolates between k_min and k_max by normalized density, and the
/// result is symmetrized by union.
template <metric_source M>
NeighborhoodGraph adaptive_graph(const M& metric, std::size_t k_min, std::size_t k_max,
                                 DensityDirection direction = DensityDirection::ascending,
                                 unsigned workers = 0)
{
    detail::require_points(metric);
    const std::size_t n = metric.size();
    if (k_min < 1 || k_min > k_max || k_max >= n)
        throw parameter_error("adaptive_graph: need 1 <= k_min <= k_max < n (k_min=" +
                              std::to_string(k_min) + ", k_max=" + std::to_string(k_max) +
                              ", n=" + std::to_string(n) + ")");
    auto nn = detail::nearest_neighbors(metric, k_max, workers);

    std::vector<double> raw(n, 0.0);
    std::vector<std::size_t> coincident;
    double densest = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (const auto& r : nn[i])
            sum += r.dist;
        double mean = sum / static_cast<double>(k_max);
        if (mean > 0.0) {
            raw[i] = 1.0 / mean;
            densest = std::max(densest, raw[i]);
        } else {
            coincident.push_back(i);
        }
    }
    if (!coincident.empty()) {
        std::clog << "adaptive_graph: " << coincident.size()
                  << " point(s) with all neighbors coincident; density set to global max\n";
        for (std::size_t i : coincident)
            raw[i] = densest;
    }

    NeighborhoodGraph out;
    out.density = density_scores(std::move(raw), k_min, k_max, direction);
    out.graph = detail::union_graph(nn, out.density->k_per_point);
    out.params.rule = GraphRule::adaptive;
    out.params.k_min = k_min;
    out.params.k_max = k_max;
    out.params.direction = direction;
    return out;
}

} // namespace sectional
