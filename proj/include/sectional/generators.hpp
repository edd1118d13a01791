#pragma once

#include "sectional/distance_matrix.hpp"
#include "sectional/error.hpp"
#include "sectional/graph.hpp"
#include "sectional/point_cloud.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace sectional::gen {

using rng_t = std::mt19937_64;

/// G(n, p) with p = avg_degree / (n - 1).
inline Graph erdos_renyi(std::size_t n, double avg_degree, std::uint64_t seed)
{
    if (n < 2)
        throw parameter_error("erdos_renyi: n must be at least 2");
    const double max_degree = static_cast<double>(n - 1);
    if (!(avg_degree > 0.0) || avg_degree > max_degree)
        throw parameter_error("erdos_renyi: need 0 < avg_degree <= n - 1");
    double p = avg_degree / max_degree;
    if (p > 1.0 - 1e-12)
        p = 1.0;
    rng_t rng(seed);
    std::bernoulli_distribution coin(p);
    Graph g(n);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (coin(rng))
                g.add_edge(u, v);
    return g;
}

/// Watts-Strogatz small world: ring lattice where every vertex links to its
/// k/2 successors, then each lattice edge (u, u+j) is rewired with
/// probability beta to (u, w) for a uniform w avoiding self-loops and
/// duplicate edges. Edge count is preserved.
inline Graph watts_strogatz(std::size_t n, std::size_t k, double beta, std::uint64_t seed)
{
    if (k % 2 != 0)
        throw parameter_error("watts_strogatz: k must be even");
    if (k == 0 || k >= n)
        throw parameter_error("watts_strogatz: need 0 < k < n");
    if (!(beta >= 0.0 && beta <= 1.0))
        throw parameter_error("watts_strogatz: beta must lie in [0, 1]");

    std::vector<std::set<std::size_t>> adj(n);
    auto link = [&](std::size_t a, std::size_t b) {
        adj[a].insert(b);
        adj[b].insert(a);
    };
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t j = 1; j <= k / 2; ++j)
            link(u, (u + j) % n);

    rng_t rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> any(0, n - 1);
    for (std::size_t j = 1; j <= k / 2; ++j)
        for (std::size_t u = 0; u < n; ++u) {
            std::size_t v = (u + j) % n;
            if (unit(rng) >= beta)
                continue;
            if (adj[u].size() >= n - 1)
                continue; // u is already adjacent to everything
            std::size_t w;
            do
                w = any(rng);
            while (w == u || adj[u].count(w));
            adj[u].erase(v);
            adj[v].erase(u);
            link(u, w);
        }

    Graph g(n);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v : adj[u])
            if (u < v)
                g.add_edge(u, v);
    return g;
}

/// Geodesic (arc-length) distance between angles on a circle of given radius.
inline double arc_distance(double a, double b, double radius = 1.0) noexcept
{
    double delta = std::abs(a - b);
    return radius * std::min(delta, 2.0 * std::numbers::pi - delta);
}

/// Arc-metric distance matrix of the given angles.
inline DistanceMatrix circle_metric(const std::vector<double>& angles, double radius = 1.0)
{
    const std::size_t n = angles.size();
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            d[i * n + j] = d[j * n + i] = arc_distance(angles[i], angles[j], radius);
    return DistanceMatrix::from_dense(n, std::move(d));
}

/// n uniform angles in [0, 2 pi), sorted.
inline std::vector<double> circle_angles(std::size_t n, std::uint64_t seed)
{
    rng_t rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::vector<double> a(n);
    for (auto& x : a)
        x = angle(rng);
    std::sort(a.begin(), a.end());
    return a;
}

inline DistanceMatrix circle_sample(std::size_t n, std::uint64_t seed, double radius = 1.0)
{
    if (n < 3)
        throw parameter_error("circle_sample: n must be at least 3");
    if (!(radius > 0.0))
        throw parameter_error("circle_sample: radius must be positive");
    return circle_metric(circle_angles(n, seed), radius);
}

/// n uniform points in the unit square.
inline PointCloud plane_sample(std::size_t n, std::uint64_t seed)
{
    if (n < 2)
        throw parameter_error("plane_sample: n must be at least 2");
    rng_t rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> c(2 * n);
    for (auto& x : c)
        x = u(rng);
    return PointCloud(n, 2, std::move(c));
}

/// Balanced rooted tree with unit edges; vertices numbered breadth first
/// from the root 0.
inline Graph tree_graph(std::size_t branching, std::size_t depth)
{
    if (branching < 2)
        throw parameter_error("tree_graph: branching must be at least 2");
    if (depth < 1)
        throw parameter_error("tree_graph: depth must be at least 1");
    std::size_t n = 1, level = 1;
    for (std::size_t d = 0; d < depth; ++d) {
        level *= branching;
        n += level;
    }
    Graph g(n);
    for (std::size_t v = 1; v < n; ++v)
        g.add_edge((v - 1) / branching, v);
    return g;
}

struct DlaOptions {
    std::size_t branches = 10;
    std::size_t nodes_per_branch = 300;
    std::size_t block_dim = 60;   ///< m; ambient dimension is branches * m
    double spacing = 1.0;         ///< step between consecutive points of a branch
    double length_jitter = 0.0;   ///< in [0, 1): branches from the 4th on lose up to this fraction of points
    double noise_sigma = 0.0;     ///< Gaussian jitter added to every coordinate
    std::uint64_t seed = 0;
};

/// Artificial tree with branches progressing in disjoint coordinate blocks.
///
/// Branch 1 holds l points advancing along the diagonal of block 1. Branch j
/// starts at a point of an earlier branch, keeps that point's coordinates,
/// and advances along the diagonal of block j. Branches 2 and 3 start at
/// the end of branch 1; later branches start at a seeded random point of a
/// random earlier branch.
inline PointCloud dla_tree(const DlaOptions& o)
{
    if (o.branches < 2 || o.nodes_per_branch < 2 || o.block_dim < 1)
        throw parameter_error("dla_tree: need branches >= 2, nodes_per_branch >= 2, block_dim >= 1");
    if (!(o.length_jitter >= 0.0 && o.length_jitter < 1.0))
        throw parameter_error("dla_tree: length_jitter must lie in [0, 1)");
    if (!(o.noise_sigma >= 0.0) || !(o.spacing > 0.0))
        throw parameter_error("dla_tree: noise_sigma must be >= 0 and spacing > 0");

    const std::size_t dim = o.branches * o.block_dim;
    rng_t rng(o.seed);
    std::vector<std::vector<double>> points;
    std::vector<std::pair<std::size_t, std::size_t>> branch_range; // [first, last] point index

    for (std::size_t b = 0; b < o.branches; ++b) {
        std::vector<double> origin(dim, 0.0);
        if (b == 1 || b == 2) {
            origin = points[branch_range[0].second];
        } else if (b >= 3) {
            std::uniform_int_distribution<std::size_t> pick_branch(0, b - 1);
            auto [first, last] = branch_range[pick_branch(rng)];
            std::uniform_int_distribution<std::size_t> pick_point(first, last);
            origin = points[pick_point(rng)];
        }
        std::size_t length = o.nodes_per_branch;
        if (b >= 3 && o.length_jitter > 0.0) {
            auto cut = static_cast<std::size_t>(o.length_jitter * static_cast<double>(length));
            std::uniform_int_distribution<std::size_t> drop(0, cut);
            length = std::max<std::size_t>(2, length - drop(rng));
        }
        std::size_t first = points.size();
        for (std::size_t t = 0; t < length; ++t) {
            auto p = origin;
            for (std::size_t k = 0; k < o.block_dim; ++k)
                p[b * o.block_dim + k] = static_cast<double>(t) * o.spacing;
            points.push_back(std::move(p));
        }
        branch_range.emplace_back(first, points.size() - 1);
    }

    std::vector<double> coords;
    coords.reserve(points.size() * dim);
    std::normal_distribution<double> noise(0.0, o.noise_sigma > 0.0 ? o.noise_sigma : 1.0);
    for (const auto& p : points)
        for (double x : p)
            coords.push_back(o.noise_sigma > 0.0 ? x + noise(rng) : x);
    return PointCloud(points.size(), dim, std::move(coords));
}

inline PointCloud dla_tree(std::size_t branches, std::size_t nodes_per_branch, std::size_t block_dim,
                           std::uint64_t seed = 0)
{
    DlaOptions o;
    o.branches = branches;
    o.nodes_per_branch = nodes_per_branch;
    o.block_dim = block_dim;
    o.seed = seed;
    return dla_tree(o);
}

/// Extra ambient dimensions added by gaussian_isometric.
inline constexpr std::size_t isometric_padding = 50;

struct IsometricPair {
    PointCloud low;  ///< N x n, i.i.d. standard normal
    PointCloud high; ///< N x (n + 50), low times Q^T for an orthonormal Q
};

/// Standard normal cloud in R^n and its isometric image in R^(n + 50),
/// obtained from the Q factor of a Gaussian (n + 50) x n matrix.
inline IsometricPair gaussian_isometric(std::size_t count, std::size_t n, std::uint64_t seed)
{
    if (n < 1 || count <= n)
        throw parameter_error("gaussian_isometric: need N > n >= 1");
    const std::size_t high_dim = n + isometric_padding;
    rng_t rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    Eigen::MatrixXd x(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        for (Eigen::Index j = 0; j < x.cols(); ++j)
            x(i, j) = normal(rng);
    Eigen::MatrixXd a(static_cast<Eigen::Index>(high_dim), static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            a(i, j) = normal(rng);

    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(a.rows(), a.cols());
    Eigen::MatrixXd y = x * q.transpose();

    auto to_cloud = [](const Eigen::MatrixXd& m) {
        std::vector<double> c(static_cast<std::size_t>(m.size()));
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j)
                c[static_cast<std::size_t>(i * m.cols() + j)] = m(i, j);
        return PointCloud(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()),
                          std::move(c));
    };
    return {to_cloud(x), to_cloud(y)};
}

} // namespace sectional::gen
