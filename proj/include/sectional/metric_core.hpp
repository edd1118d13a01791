#pragma once

#include "sectional/distance_matrix.hpp"
#include "sectional/error.hpp"
#include "sectional/graph.hpp"
#include "sectional/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <utility>
#include <vector>

namespace sectional {

/// Relative tolerance used for side-length equality on exact metrics.
inline constexpr double exact_tolerance = 1e-9;

inline bool nearly_equal(double a, double b, double rel = exact_tolerance) noexcept
{
    return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-300});
}

namespace detail {

inline void bfs_row(const Graph& g, std::size_t source, std::span<double> out)
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::fill(out.begin(), out.end(), inf);
    std::vector<std::size_t> frontier{source}, next;
    out[source] = 0.0;
    double level = 0.0;
    while (!frontier.empty()) {
        level += 1.0;
        next.clear();
        for (std::size_t u : frontier)
            for (const auto& nb : g.neighbors(u))
                if (out[nb.vertex] == inf) {
                    out[nb.vertex] = level;
                    next.push_back(nb.vertex);
                }
        frontier.swap(next);
    }
}

inline void dijkstra_row(const Graph& g, std::size_t source, std::span<double> out)
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::fill(out.begin(), out.end(), inf);
    using item = std::pair<double, std::size_t>;
    std::priority_queue<item, std::vector<item>, std::greater<>> heap;
    out[source] = 0.0;
    heap.emplace(0.0, source);
    while (!heap.empty()) {
        auto [du, u] = heap.top();
        heap.pop();
        if (du > out[u])
            continue;
        for (const auto& nb : g.neighbors(u)) {
            double alt = du + nb.w;
            if (alt < out[nb.vertex]) {
                out[nb.vertex] = alt;
                heap.emplace(alt, nb.vertex);
            }
        }
    }
}

} // namespace detail

/// All-pairs shortest path lengths of an undirected graph.
///
/// Unit-weight graphs run one BFS per source; anything else runs Dijkstra.
/// Rows are filled independently on up to `workers` threads.
inline DistanceMatrix shortest_path_matrix(const Graph& g, unsigned workers = 0)
{
    const std::size_t n = g.vertex_count();
    if (n == 0)
        throw empty_result_error("shortest_path_matrix: graph has no vertices");
    for (const auto& e : g.edges())
        if (!(e.w >= 0.0) || !std::isfinite(e.w))
            throw parameter_error("shortest_path_matrix: invalid edge weight " +
                                  std::to_string(e.w) + " on (" + std::to_string(e.u) + ", " +
                                  std::to_string(e.v) + ")");
    g.freeze();
    const bool unit = g.unit_weights();
    std::vector<double> values(n * n);
    parallel_for(n, workers, [&](std::size_t s) {
        std::span<double> row(values.data() + s * n, n);
        if (unit)
            detail::bfs_row(g, s, row);
        else
            detail::dijkstra_row(g, s, row);
    });
    // Dijkstra sums in different orders per source; keep the matrix exactly symmetric.
    if (!unit)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                double m = std::min(values[i * n + j], values[j * n + i]);
                values[i * n + j] = values[j * n + i] = m;
            }
    return DistanceMatrix::from_dense(n, std::move(values));
}

/// Gromov products of a triple: the unique radii with r_i + r_j = d(x_i, x_j).
struct GromovProducts {
    double r1 = 0.0;
    double r2 = 0.0;
    double r3 = 0.0;

    /// A negative component means the input violated the triangle inequality.
    bool has_negative() const noexcept { return r1 < 0.0 || r2 < 0.0 || r3 < 0.0; }
    std::array<double, 3> as_array() const noexcept { return {r1, r2, r3}; }
};

inline GromovProducts gromov_products(double d12, double d13, double d23)
{
    if (d12 < 0.0 || d13 < 0.0 || d23 < 0.0)
        throw parameter_error("gromov_products: distances must be nonnegative");
    // Float shortest paths can miss the triangle inequality by a few ulps;
    // such products are zero, not violations.
    const double slack = exact_tolerance * std::max({d12, d13, d23});
    auto snap = [slack](double r) { return (r < 0.0 && r >= -slack) ? 0.0 : r; };
    return {snap((d12 + d13 - d23) / 2.0), snap((d12 + d23 - d13) / 2.0), snap((d13 + d23 - d12) / 2.0)};
}

/// Shape of a triple: lambda is the largest alpha with
/// alpha * side <= sum of the other two sides, for every side.
struct TripleShape {
    double lambda = 0.0;
    bool is_degenerate = false;
    bool is_equilateral = false;
};

inline TripleShape lambda_measure(double d12, double d13, double d23, double rel = exact_tolerance)
{
    if (d12 < 0.0 || d13 < 0.0 || d23 < 0.0)
        throw parameter_error("lambda_measure: distances must be nonnegative");
    if (d12 == 0.0 || d13 == 0.0 || d23 == 0.0)
        throw parameter_error("lambda_measure: zero side length (coincident points)");
    // The longest side gives the binding constraint.
    const double longest = std::max({d12, d13, d23});
    TripleShape s;
    s.lambda = (d12 + d13 + d23 - longest) / longest;
    s.is_equilateral = nearly_equal(d12, d13, rel) && nearly_equal(d13, d23, rel) &&
                       nearly_equal(d12, d23, rel);
    if (s.is_equilateral)
        s.lambda = 2.0;
    if (std::abs(s.lambda - 1.0) <= rel) {
        s.lambda = 1.0;
        s.is_degenerate = true;
    }
    return s;
}

struct TriangleViolation {
    std::size_t i, j, k;
    double excess; ///< d(i,k) - d(i,j) - d(j,k)
};

/// Triangle-inequality violations among connected triples, beyond relative
/// tolerance `rel`. Pairs holding the sentinel are never reported.
inline std::vector<TriangleViolation> triangle_violations(const DistanceMatrix& d,
                                                          double rel = exact_tolerance)
{
    std::vector<TriangleViolation> out;
    const std::size_t n = d.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i + 1; k < n; ++k) {
            if (!d.connected(i, k))
                continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i || j == k || !d.connected(i, j) || !d.connected(j, k))
                    continue;
                double via = d(i, j) + d(j, k);
                double excess = d(i, k) - via;
                if (excess > rel * std::max(via, 1.0))
                    out.push_back({i, j, k, excess});
            }
        }
    return out;
}

} // namespace sectional
