#pragma once

// Exhaustive searches used as references for the sampled and closed-form code.

#include <sectional/distance_matrix.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <vector>

namespace oracle {

/// All triples i < j < k whose three pairwise distances satisfy `match`.
inline std::vector<std::array<std::size_t, 3>>
all_triples(const sectional::DistanceMatrix& d, const std::function<bool(double)>& match)
{
    std::vector<std::array<std::size_t, 3>> out;
    const std::size_t n = d.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                if (d.connected(i, j) && d.connected(i, k) && d.connected(j, k) && match(d(i, j)) &&
                    match(d(i, k)) && match(d(j, k)))
                    out.push_back({i, j, k});
    return out;
}

inline std::set<std::size_t> vertices_of(const std::vector<std::array<std::size_t, 3>>& triples)
{
    std::set<std::size_t> v;
    for (const auto& t : triples)
        v.insert(t.begin(), t.end());
    return v;
}

/// Largest alpha on a fine grid over [0, 3] with alpha * side <= sum of the
/// other two for every side.
inline double lambda_scan(double a, double b, double c, std::size_t steps = 3'000'000)
{
    double best = 0.0;
    for (std::size_t s = 0; s <= steps; ++s) {
        double alpha = 3.0 * static_cast<double>(s) / static_cast<double>(steps);
        if (alpha * a <= b + c && alpha * b <= a + c && alpha * c <= a + b)
            best = alpha;
        else
            break;
    }
    return best;
}

/// min over x of max_i d(v_i, x) / r_i, with radii given explicitly.
inline double minmax_ratio(const sectional::DistanceMatrix& d, std::array<std::size_t, 3> v,
                           std::array<double, 3> r)
{
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x < d.size(); ++x) {
        double worst = 0.0;
        for (int i = 0; i < 3; ++i) {
            double q = d(v[i], x) == 0.0 ? 0.0 : d(v[i], x) / r[i];
            worst = std::max(worst, q);
        }
        best = std::min(best, worst);
    }
    return best;
}

/// Grows the common radius of three closed balls around an equilateral
/// triple (half side r) by a fixed step until they share a vertex; returns
/// the final radius over r.
inline double ball_scan(const sectional::DistanceMatrix& d, std::array<std::size_t, 3> v, double r,
                        double step)
{
    for (std::size_t t = 0;; ++t) {
        double radius = r + static_cast<double>(t) * step;
        for (std::size_t x = 0; x < d.size(); ++x)
            if (d(v[0], x) <= radius && d(v[1], x) <= radius && d(v[2], x) <= radius)
                return radius / r;
        if (radius > 4.0 * r + d.diameter())
            return std::numeric_limits<double>::infinity();
    }
}

} // namespace oracle
