#pragma once

#include <sectional/sectional.hpp>

#include <random>
#include <vector>

namespace fixtures {

using sectional::Graph;

inline Graph cycle(std::size_t n)
{
    Graph g(n);
    for (std::size_t i = 0; i < n; ++i)
        g.add_edge(i, (i + 1) % n);
    return g;
}

inline Graph path(std::size_t n)
{
    Graph g(n);
    for (std::size_t i = 0; i + 1 < n; ++i)
        g.add_edge(i, i + 1);
    return g;
}

inline Graph complete(std::size_t n)
{
    Graph g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            g.add_edge(i, j);
    return g;
}

/// Center 0 with `arms` legs of length `len`.
inline Graph spider(std::size_t arms, std::size_t len)
{
    Graph g(1 + arms * len);
    for (std::size_t a = 0; a < arms; ++a)
        for (std::size_t s = 0; s < len; ++s) {
            std::size_t v = 1 + a * len + s;
            g.add_edge(s == 0 ? 0 : v - 1, v);
        }
    return g;
}

/// Connected random graph: a random spanning tree plus extra random edges,
/// optionally with integer weights in [1, max_w].
inline Graph random_connected(std::size_t n, double extra_p, std::uint64_t seed, int max_w = 1)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> w(1, max_w);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Graph g(n);
    std::vector<std::vector<bool>> has(n, std::vector<bool>(n, false));
    for (std::size_t v = 1; v < n; ++v) {
        std::size_t p = std::uniform_int_distribution<std::size_t>(0, v - 1)(rng);
        g.add_edge(p, v, w(rng));
        has[p][v] = has[v][p] = true;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!has[i][j] && u(rng) < extra_p)
                g.add_edge(i, j, w(rng));
    return g;
}

inline sectional::DistanceMatrix dense(std::size_t n, std::vector<double> v)
{
    return sectional::DistanceMatrix::from_dense(n, std::move(v));
}

} // namespace fixtures
