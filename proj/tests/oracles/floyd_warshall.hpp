#pragma once

// Independent all-pairs shortest paths for checking the library.

#include <sectional/graph.hpp>

#include <algorithm>
#include <limits>
#include <vector>

namespace oracle {

inline std::vector<double> floyd_warshall(const sectional::Graph& g)
{
    const std::size_t n = g.vertex_count();
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> d(n * n, inf);
    for (std::size_t i = 0; i < n; ++i)
        d[i * n + i] = 0.0;
    for (const auto& e : g.edges()) {
        d[e.u * n + e.v] = std::min(d[e.u * n + e.v], e.w);
        d[e.v * n + e.u] = std::min(d[e.v * n + e.u], e.w);
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (d[i * n + k] + d[k * n + j] < d[i * n + j])
                    d[i * n + j] = d[i * n + k] + d[k * n + j];
    return d;
}

} // namespace oracle
