#pragma once

#include "sectional/curvature_profile.hpp"
#include "sectional/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace sectional {

/// Uniform grid over (r, rho) onto which profile observations are snapped,
/// plus the ground metric used between grid nodes.
struct GridSpec {
    std::size_t r_nodes = 50;
    std::size_t rho_nodes = 50;
    double r_min = 0.0;
    double r_max = 1.0;
    double rho_min = 1.0;
    double rho_max = 2.0;
    bool normalize_r = true; ///< divide r by the profile's own max r first
    double r_weight = 1.0;
    double rho_weight = 1.0;

    friend bool operator==(const GridSpec&, const GridSpec&) = default;

    void validate() const
    {
        if (r_nodes < 2 || rho_nodes < 2)
            throw parameter_error("grid needs at least 2 nodes per axis");
        if (!(r_max > r_min) || !(rho_max > rho_min))
            throw parameter_error("grid ranges must be nonempty");
        if (!(r_weight > 0.0) || !(rho_weight > 0.0))
            throw parameter_error("grid axis weights must be positive");
    }

    double r_spacing() const noexcept { return (r_max - r_min) / static_cast<double>(r_nodes - 1); }
    double rho_spacing() const noexcept
    {
        return (rho_max - rho_min) / static_cast<double>(rho_nodes - 1);
    }
    // Node coordinates; the last node lands exactly on the upper bound.
    double r_node(std::size_t i) const noexcept
    {
        return r_min + (r_max - r_min) * static_cast<double>(i) / static_cast<double>(r_nodes - 1);
    }
    double rho_node(std::size_t j) const noexcept
    {
        return rho_min + (rho_max - rho_min) * static_cast<double>(j) / static_cast<double>(rho_nodes - 1);
    }

    double ground_distance(double r1, double rho1, double r2, double rho2) const noexcept
    {
        return std::hypot(r_weight * (r1 - r2), rho_weight * (rho1 - rho2));
    }
};

struct SupportPoint {
    double r = 0.0;
    double rho = 0.0;
    friend bool operator==(const SupportPoint&, const SupportPoint&) = default;
};

/// Discrete probability measure on (r, rho).
struct ProfileDistribution {
    std::vector<SupportPoint> support;
    std::vector<double> mass;
    GridSpec grid;

    std::size_t size() const noexcept { return support.size(); }
};

/// Validates and packages an explicit distribution.
inline ProfileDistribution make_distribution(std::vector<SupportPoint> support,
                                             std::vector<double> mass, GridSpec grid = {})
{
    if (support.size() != mass.size())
        throw parameter_error("distribution: support and mass sizes differ");
    if (support.empty())
        throw empty_result_error("distribution: empty support");
    double total = 0.0;
    for (double w : mass) {
        if (!(w >= 0.0))
            throw parameter_error("distribution: negative or NaN mass");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw parameter_error("distribution: masses must sum to 1");
    for (std::size_t i = 0; i < support.size(); ++i)
        for (std::size_t j = i + 1; j < support.size(); ++j)
            if (support[i] == support[j])
                throw parameter_error("distribution: duplicate support point");
    return {std::move(support), std::move(mass), grid};
}

/// Snaps every (r, rho) observation of a profile to its nearest grid node
/// and weights nodes by triangle counts.
inline ProfileDistribution to_distribution(const CurvatureProfile& p, const GridSpec& grid = {})
{
    grid.validate();
    if (p.triangle_count() == 0)
        throw empty_result_error("to_distribution: profile has no triangles");
    double max_r = 0.0;
    for (const auto& rec : p.records)
        max_r = std::max(max_r, rec.r);
    const double scale = grid.normalize_r ? 1.0 / max_r : 1.0;

    auto snap = [](double x, double lo, double hi, std::size_t nodes, const char* axis) {
        double t = (x - lo) / (hi - lo) * static_cast<double>(nodes - 1);
        if (t < -0.5 - 1e-9 || t > static_cast<double>(nodes - 1) + 0.5 + 1e-9)
            throw parameter_error(std::string("to_distribution: ") + axis +
                                  " value outside grid range");
        auto i = static_cast<long long>(std::llround(t));
        return static_cast<std::size_t>(
            std::clamp<long long>(i, 0, static_cast<long long>(nodes) - 1));
    };

    std::map<std::pair<std::size_t, std::size_t>, std::size_t> counts;
    std::size_t total = 0;
    for (const auto& rec : p.records)
        for (double rho : rec.rho_values) {
            auto i = snap(rec.r * scale, grid.r_min, grid.r_max, grid.r_nodes, "r");
            auto j = snap(rho, grid.rho_min, grid.rho_max, grid.rho_nodes, "rho");
            ++counts[{i, j}];
            ++total;
        }

    ProfileDistribution out;
    out.grid = grid;
    for (const auto& [node, c] : counts) {
        out.support.push_back({grid.r_node(node.first),
                               grid.rho_node(node.second)});
        out.mass.push_back(static_cast<double>(c) / static_cast<double>(total));
    }
    return out;
}

struct Flow {
    std::size_t source;
    std::size_t target;
    double amount;
};

struct TransportPlan {
    std::vector<Flow> flows;
    double cost = 0.0;
};

/// Exact transportation between two discrete measures with an arbitrary
/// nonnegative cost matrix (row-major, supply.size() x demand.size()).
///
/// Successive shortest paths on the bipartite residual network: each round
/// runs a dense Dijkstra on reduced costs from every source with supply left
/// and augments along the cheapest path to a sink with demand left.
inline TransportPlan solve_transport(const std::vector<double>& supply,
                                     const std::vector<double>& demand,
                                     const std::vector<double>& cost)
{
    const std::size_t n = supply.size(), m = demand.size();
    if (n == 0 || m == 0)
        throw empty_result_error("solve_transport: empty side");
    if (cost.size() != n * m)
        throw parameter_error("solve_transport: cost matrix has wrong size");
    constexpr double inf = std::numeric_limits<double>::infinity();
    constexpr double tiny = 1e-15;

    std::vector<double> left_s(supply), left_d(demand), flow(n * m, 0.0);
    std::vector<double> pot(n + m, 0.0); // sources [0, n), sinks [n, n + m)
    std::vector<double> dist(n + m);
    std::vector<std::size_t> pred(n + m);
    std::vector<char> done(n + m);
    constexpr auto none = std::numeric_limits<std::size_t>::max();

    auto remaining = [&] {
        double s = 0.0;
        for (double x : left_s)
            s += x;
        return s;
    };

    for (std::size_t round = 0; remaining() > 1e-13; ++round) {
        if (round > 4 * (n + m) * (n + m) + 16)
            throw internal_error("solve_transport: augmentation limit exceeded");
        std::fill(dist.begin(), dist.end(), inf);
        std::fill(pred.begin(), pred.end(), none);
        std::fill(done.begin(), done.end(), 0);
        for (std::size_t i = 0; i < n; ++i)
            if (left_s[i] > tiny)
                dist[i] = 0.0;

        std::size_t target = none;
        for (;;) {
            std::size_t u = none;
            double best = inf;
            for (std::size_t v = 0; v < n + m; ++v)
                if (!done[v] && dist[v] < best) {
                    best = dist[v];
                    u = v;
                }
            if (u == none)
                break;
            done[u] = 1;
            if (u >= n && left_d[u - n] > tiny) {
                target = u;
                break;
            }
            if (u < n) {
                const double* c = cost.data() + u * m;
                for (std::size_t j = 0; j < m; ++j) {
                    std::size_t v = n + j;
                    if (done[v])
                        continue;
                    double nd = best + std::max(0.0, c[j] + pot[u] - pot[v]);
                    if (nd < dist[v]) {
                        dist[v] = nd;
                        pred[v] = u;
                    }
                }
            } else {
                std::size_t j = u - n;
                for (std::size_t i = 0; i < n; ++i) {
                    if (done[i] || flow[i * m + j] <= tiny)
                        continue;
                    double nd = best + std::max(0.0, -cost[i * m + j] + pot[u] - pot[i]);
                    if (nd < dist[i]) {
                        dist[i] = nd;
                        pred[i] = u;
                    }
                }
            }
        }
        if (target == none)
            break; // only round-off mass is left

        const double reach = dist[target];
        for (std::size_t v = 0; v < n + m; ++v)
            pot[v] += std::min(dist[v], reach);

        double delta = left_d[target - n];
        std::size_t v = target;
        while (pred[v] != none) {
            std::size_t u = pred[v];
            if (u >= n) // backward arc: sink u -> source v cancels flow (v, u)
                delta = std::min(delta, flow[v * m + (u - n)]);
            v = u;
        }
        delta = std::min(delta, left_s[v]);

        left_d[target - n] -= delta;
        left_s[v] -= delta;
        v = target;
        while (pred[v] != none) {
            std::size_t u = pred[v];
            if (u < n)
                flow[u * m + (v - n)] += delta;
            else
                flow[v * m + (u - n)] = std::max(0.0, flow[v * m + (u - n)] - delta);
            v = u;
        }
    }

    TransportPlan plan;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (flow[i * m + j] > tiny) {
                plan.flows.push_back({i, j, flow[i * m + j]});
                plan.cost += flow[i * m + j] * cost[i * m + j];
            }
    return plan;
}

/// Ground-cost matrix between two distributions.
inline std::vector<double> ground_costs(const ProfileDistribution& p, const ProfileDistribution& q)
{
    std::vector<double> c(p.size() * q.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j)
            c[i * q.size() + j] = p.grid.ground_distance(p.support[i].r, p.support[i].rho,
                                                         q.support[j].r, q.support[j].rho);
    return c;
}

/// Optimal plan for the 1-Wasserstein distance between two distributions.
inline TransportPlan wasserstein1_plan(const ProfileDistribution& p, const ProfileDistribution& q)
{
    if (p.support.empty() || q.support.empty())
        throw empty_result_error("wasserstein1: empty distribution");
    if (!(p.grid == q.grid))
        throw parameter_error("wasserstein1: distributions live on different grids");
    // Solve in a canonical argument order so that W1(p, q) == W1(q, p) bit for bit.
    auto less = [](const SupportPoint& a, const SupportPoint& b) {
        return std::tie(a.r, a.rho) < std::tie(b.r, b.rho);
    };
    bool swap = q.support.size() != p.support.size()
                    ? q.support.size() < p.support.size()
                    : std::lexicographical_compare(q.support.begin(), q.support.end(),
                                                   p.support.begin(), p.support.end(), less) ||
                          (q.support == p.support && q.mass < p.mass);
    if (!swap)
        return solve_transport(p.mass, q.mass, ground_costs(p, q));
    auto plan = solve_transport(q.mass, p.mass, ground_costs(q, p));
    for (auto& f : plan.flows)
        std::swap(f.source, f.target);
    std::sort(plan.flows.begin(), plan.flows.end(), [](const Flow& a, const Flow& b) {
        return std::tie(a.source, a.target) < std::tie(b.source, b.target);
    });
    return plan;
}

inline double wasserstein1(const ProfileDistribution& p, const ProfileDistribution& q)
{
    return wasserstein1_plan(p, q).cost;
}

struct DimensionEstimate {
    std::size_t d_best = 0;
    std::vector<std::pair<std::size_t, double>> curve; ///< (dimension, W1), ascending d
};

/// What estimate_dimension does with an embedded profile that has no
/// triangles (typical for 1-D embeddings, which contain no equilateral
/// triples): fail, or score that dimension as infinitely far.
enum class EmptyProfilePolicy { error, infinite };

/// Picks the embedding dimension whose profile is closest in W1 to the
/// original's; ties go to the smaller dimension.
inline DimensionEstimate estimate_dimension(const CurvatureProfile& original,
                                            const std::map<std::size_t, CurvatureProfile>& embedded,
                                            const GridSpec& grid = {},
                                            EmptyProfilePolicy empty = EmptyProfilePolicy::error)
{
    if (embedded.size() < 2)
        throw parameter_error("estimate_dimension: need at least 2 candidate dimensions");
    GridSpec g = grid;
    if (!g.normalize_r) {
        double r_hi = 0.0;
        auto widen = [&](const CurvatureProfile& p) {
            for (const auto& rec : p.records)
                r_hi = std::max(r_hi, rec.r);
        };
        widen(original);
        for (const auto& [dim, prof] : embedded)
            widen(prof);
        g.r_max = std::max(g.r_max, r_hi);
    }
    ProfileDistribution base;
    try {
        base = to_distribution(original, g);
    } catch (const empty_result_error&) {
        throw empty_result_error("estimate_dimension: original profile is empty");
    }
    DimensionEstimate out;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [dim, prof] : embedded) {
        if (prof.triangle_count() == 0 && empty == EmptyProfilePolicy::infinite) {
            out.curve.emplace_back(dim, std::numeric_limits<double>::infinity());
            continue;
        }
        ProfileDistribution q;
        try {
            q = to_distribution(prof, g);
        } catch (const empty_result_error&) {
            throw empty_result_error("estimate_dimension: profile for dimension " +
                                     std::to_string(dim) + " is empty");
        }
        double w = wasserstein1(base, q);
        out.curve.emplace_back(dim, w);
        if (w < best) {
            best = w;
            out.d_best = dim;
        }
    }
    if (!std::isfinite(best))
        throw empty_result_error("estimate_dimension: every embedded profile is empty");
    return out;
}

/// Smallest dimension whose W1 lies within (1 + rel) of the curve minimum.
inline std::size_t first_elbow(const std::vector<std::pair<std::size_t, double>>& curve,
                               double rel = 0.1)
{
    if (curve.empty())
        throw empty_result_error("first_elbow: empty curve");
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& [d, w] : curve)
        lo = std::min(lo, w);
    for (const auto& [d, w] : curve)
        if (w <= (1.0 + rel) * lo)
            return d;
    return curve.front().first;
}

} // namespace sectional
