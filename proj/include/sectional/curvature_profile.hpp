#pragma once

#include "sectional/distance_matrix.hpp"
#include "sectional/error.hpp"
#include "sectional/metric_core.hpp"
#include "sectional/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <array>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace sectional {

/// Reference expansion factors drawn as horizontal lines in profile plots.
namespace reference_rho {
inline constexpr double tree = 1.0;                               ///< hyperconvex / tree-like
inline constexpr double euclidean = 2.0 / std::numbers::sqrt3;    ///< flat plane
inline constexpr double circle = 2.0;                             ///< equidistant points on a circle
} // namespace reference_rho

/// Slack allowed when asserting 1 <= rho <= 2 on computed values.
inline constexpr double rho_range_slack = 1e-12;

struct EquilateralTriple {
    std::size_t v1 = 0, v2 = 0, v3 = 0; ///< v1 < v2 < v3
    double side = 0.0;                  ///< common side length (bin label when binned)
    double r = 0.0;                     ///< side / 2

    friend bool operator==(const EquilateralTriple& a, const EquilateralTriple& b) noexcept
    {
        return a.v1 == b.v1 && a.v2 == b.v2 && a.v3 == b.v3;
    }
    friend bool operator<(const EquilateralTriple& a, const EquilateralTriple& b) noexcept
    {
        if (a.v1 != b.v1) return a.v1 < b.v1;
        if (a.v2 != b.v2) return a.v2 < b.v2;
        return a.v3 < b.v3;
    }
};

struct RhoValue {
    double rho = 0.0;
    std::size_t witness = 0; ///< vertex attaining the min-max, smallest index on ties
};

/// What counts as "side length s" at one scale: exact equality for integer
/// metrics, or membership in the half-open bin (lo, hi] for weighted ones.
struct Scale {
    double side = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    bool exact = true;
    std::uint64_t index = 0; ///< bin number; seeds the sampler so it ignores ulp-level drift

    static Scale exact_side(double s) noexcept { return {s, s, s, true, 0}; }
    static Scale bin(double lo, double hi, std::uint64_t index = 0) noexcept
    {
        return {(lo + hi) / 2.0, lo, hi, false, index};
    }

    bool matches(double d) const noexcept
    {
        return exact ? nearly_equal(d, side) : (d > lo && d <= hi);
    }
};

namespace detail {

inline void require_connected_triple(const DistanceMatrix& d, std::size_t a, std::size_t b,
                                     std::size_t c)
{
    const std::size_t n = d.size();
    if (a >= n || b >= n || c >= n)
        throw parameter_error("triple vertex out of range");
    if (a == b || a == c || b == c)
        throw parameter_error("triple vertices must be distinct");
    if (!d.connected(a, b) || !d.connected(a, c) || !d.connected(b, c))
        throw parameter_error("triple spans different connected components (sentinel distance)");
}

/// d / r with the conventions 0/0 = 0 and d/0 = inf for d > 0.
inline double weighted_ratio(double dist, double radius) noexcept
{
    if (radius > 0.0)
        return dist / radius;
    return dist == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

/// Pulls a finite growth level into [1, 2]. The expansion factor always lies
/// there; values just outside come from rounding in d / r. The map is
/// monotone, so it commutes with the max over the three vertices.
inline double bounded_level(double level) noexcept
{
    return std::isfinite(level) ? std::clamp(level, 1.0, 2.0) : level;
}

} // namespace detail

/// Expansion factor of an arbitrary triple: the minimum over all vertices x
/// of max_i d(x_i, x) / r_i, with r_i the Gromov products of the triple.
inline RhoValue rho_of_triple(const DistanceMatrix& d, std::size_t a, std::size_t b, std::size_t c)
{
    detail::require_connected_triple(d, a, b, c);
    const GromovProducts g = gromov_products(d(a, b), d(a, c), d(b, c));
    if (g.has_negative())
        throw input_error("triple violates the triangle inequality");
    const auto ra = d.row(a), rb = d.row(b), rc = d.row(c);
    RhoValue best{std::numeric_limits<double>::infinity(), 0};
    for (std::size_t x = 0; x < d.size(); ++x) {
        double m = detail::bounded_level(std::max({detail::weighted_ratio(ra[x], g.r1),
                                                   detail::weighted_ratio(rb[x], g.r2),
                                                   detail::weighted_ratio(rc[x], g.r3)}));
        if (m < best.rho)
            best = {m, x};
    }
    return best;
}

/// Exact expansion factor of an equilateral triple by direct min-max.
inline RhoValue rho_minmax(const DistanceMatrix& d, const EquilateralTriple& t)
{
    return rho_of_triple(d, t.v1, t.v2, t.v3);
}

namespace detail {

/// Smallest-index vertex inside all three balls of radius R * r_i / r_in,
/// or nullopt when the balls share no vertex.
inline std::optional<std::size_t> triple_intersection(const DistanceMatrix& d,
                                                      const EquilateralTriple& t,
                                                      const GromovProducts& g, double r_in,
                                                      double radius)
{
    const auto ra = d.row(t.v1), rb = d.row(t.v2), rc = d.row(t.v3);
    const double ba = radius * (g.r1 / r_in);
    const double bb = radius * (g.r2 / r_in);
    const double bc = radius * (g.r3 / r_in);
    for (std::size_t x = 0; x < d.size(); ++x)
        if (ra[x] <= ba && rb[x] <= bb && rc[x] <= bc)
            return x;
    return std::nullopt;
}

inline GromovProducts triple_radii(const DistanceMatrix& d, const EquilateralTriple& t)
{
    require_connected_triple(d, t.v1, t.v2, t.v3);
    return gromov_products(d(t.v1, t.v2), d(t.v1, t.v3), d(t.v2, t.v3));
}

inline double initial_radius(const GromovProducts& g)
{
    double r = std::max({g.r1, g.r2, g.r3});
    if (!(r > 0.0))
        throw parameter_error("ball growth needs a triple with positive side length");
    return r;
}

} // namespace detail

/// Expansion factor by growing balls around the triple's vertices.
///
/// Radii start at the Gromov products and all grow by the same factor; the
/// reference radius r_in (the largest Gromov product, side/2 for an
/// equilateral triple) advances by `step` until the three balls share a
/// vertex. The result is r_out / r_in, which overshoots the exact value by
/// less than one step.
inline RhoValue rho_ball_growth(const DistanceMatrix& d, const EquilateralTriple& t, double step)
{
    if (!(step > 0.0))
        throw parameter_error("rho_ball_growth: step must be positive");
    const GromovProducts g = detail::triple_radii(d, t);
    const double r_in = detail::initial_radius(g);
    // Beyond this radius every ball contains the whole component.
    const double limit = 2.0 * r_in + std::max(d.diameter(), 2.0 * r_in) + step;
    for (std::size_t i = 0;; ++i) {
        double radius = r_in + static_cast<double>(i) * step;
        if (radius > limit)
            throw internal_error("rho_ball_growth: balls never intersect");
        if (auto x = detail::triple_intersection(d, t, g, r_in, radius))
            return {radius / r_in, *x};
    }
}

/// Ball growth along the exact ladder of growth levels at which some ball
/// gains a vertex. Levels are tracked as radius / Gromov product, so the
/// result equals rho_minmax bit for bit.
inline RhoValue rho_ball_growth_exact(const DistanceMatrix& d, const EquilateralTriple& t)
{
    const GromovProducts g = detail::triple_radii(d, t);
    detail::initial_radius(g);
    const std::size_t tv[3] = {t.v1, t.v2, t.v3};
    const double radii[3] = {g.r1, g.r2, g.r3};

    std::vector<double> ladder{1.0};
    for (int i = 0; i < 3; ++i)
        for (std::size_t x = 0; x < d.size(); ++x) {
            if (!d.connected(tv[i], x))
                continue;
            double level = detail::bounded_level(detail::weighted_ratio(d(tv[i], x), radii[i]));
            if (level > 1.0 && std::isfinite(level))
                ladder.push_back(level);
        }
    std::sort(ladder.begin(), ladder.end());
    ladder.erase(std::unique(ladder.begin(), ladder.end()), ladder.end());

    const auto ra = d.row(t.v1), rb = d.row(t.v2), rc = d.row(t.v3);
    for (double level : ladder)
        for (std::size_t x = 0; x < d.size(); ++x)
            if (detail::bounded_level(detail::weighted_ratio(ra[x], g.r1)) <= level &&
                detail::bounded_level(detail::weighted_ratio(rb[x], g.r2)) <= level &&
                detail::bounded_level(detail::weighted_ratio(rc[x], g.r3)) <= level)
                return {level, x};
    throw internal_error("rho_ball_growth_exact: balls never intersect");
}

/// Default additive step for rho_ball_growth: 1 on integer metrics,
/// otherwise the smallest gap between distinct distances.
inline double default_growth_step(const DistanceMatrix& d)
{
    if (d.is_integral())
        return 1.0;
    std::vector<double> vals;
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j)
            if (d.connected(i, j))
                vals.push_back(d(i, j));
    std::sort(vals.begin(), vals.end());
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < vals.size(); ++i)
        if (vals[i] > vals[i - 1])
            gap = std::min(gap, vals[i] - vals[i - 1]);
    return std::isfinite(gap) ? gap : 1.0;
}

/// Expansion factor of three points on a circle, given the center angle
/// subtending their longest side: 2 pi / angle - 1.
inline double rho_circle_closed_form(double angle)
{
    if (!(angle > 0.0) || !(angle < 2.0 * std::numbers::pi))
        throw parameter_error("rho_circle_closed_form: angle must lie in (0, 2 pi)");
    return 2.0 * std::numbers::pi / angle - 1.0;
}

struct TripleSearchOptions {
    /// Restricts triple vertices to this subset when non-empty.
    std::vector<std::size_t> vertex_subset;
    unsigned workers = 0;
};

namespace detail {

inline std::mt19937_64 scale_rng(std::uint64_t seed, std::uint64_t scale_key)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(scale_key),
                      static_cast<std::uint32_t>(scale_key >> 32)};
    return std::mt19937_64(seq);
}

inline std::uint64_t scale_key(const Scale& s) noexcept
{
    if (!s.exact)
        return (std::uint64_t{1} << 63) | s.index;
    std::uint64_t bits;
    double v = s.side;
    static_assert(sizeof(bits) == sizeof(v));
    std::memcpy(&bits, &v, sizeof(bits));
    return bits;
}

} // namespace detail

/// Equilateral triples at one scale, sampled as follows: every vertex that
/// belongs to at least one such triple is a candidate; ceil(m * N) of the
/// candidates are drawn with a seeded RNG; each drawn vertex contributes the
/// first triple containing it in lexicographic order; duplicates are
/// removed. The result is sorted and holds at most ceil(m * N) triples.
/// Pairs in different components never form a triple.
inline std::vector<EquilateralTriple>
find_equilateral_triples(const DistanceMatrix& d, const Scale& scale, double m, std::uint64_t seed,
                         const TripleSearchOptions& opts = {})
{
    if (!(m > 0.0) || m > 1.0)
        throw parameter_error("find_equilateral_triples: sample fraction m must lie in (0, 1]");
    if (!(scale.side > 0.0))
        throw parameter_error("find_equilateral_triples: side must be positive");
    const std::size_t n = d.size();
    if (n < 3)
        return {};

    std::vector<char> allowed(n, opts.vertex_subset.empty() ? 1 : 0);
    for (std::size_t v : opts.vertex_subset)
        if (v < n)
            allowed[v] = 1;

    constexpr auto none = std::numeric_limits<std::size_t>::max();
    std::vector<std::array<std::size_t, 2>> first(n, {none, none});
    parallel_for(n, opts.workers, [&](std::size_t a) {
        if (!allowed[a])
            return;
        const auto row = d.row(a);
        std::vector<std::size_t> ring;
        for (std::size_t b = 0; b < n; ++b)
            if (b != a && allowed[b] && d.connected(a, b) && scale.matches(row[b]))
                ring.push_back(b);
        for (std::size_t i = 0; i < ring.size(); ++i) {
            const auto rb = d.row(ring[i]);
            for (std::size_t j = i + 1; j < ring.size(); ++j)
                if (d.connected(ring[i], ring[j]) && scale.matches(rb[ring[j]])) {
                    first[a] = {ring[i], ring[j]};
                    return;
                }
        }
    });

    std::vector<std::size_t> candidates;
    for (std::size_t a = 0; a < n; ++a)
        if (first[a][0] != none)
            candidates.push_back(a);

    const auto quota = static_cast<std::size_t>(std::ceil(m * static_cast<double>(n) - 1e-9));
    if (candidates.size() > quota) {
        auto rng = detail::scale_rng(seed, detail::scale_key(scale));
        for (std::size_t i = 0; i < quota; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, candidates.size() - 1);
            std::swap(candidates[i], candidates[pick(rng)]);
        }
        candidates.resize(quota);
    }

    std::vector<EquilateralTriple> out;
    out.reserve(candidates.size());
    for (std::size_t a : candidates) {
        std::size_t v[3] = {a, first[a][0], first[a][1]};
        std::sort(v, v + 3);
        out.push_back({v[0], v[1], v[2], scale.side, scale.side / 2.0});
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Convenience overload: exact side length.
inline std::vector<EquilateralTriple> find_equilateral_triples(const DistanceMatrix& d, double side,
                                                               double m, std::uint64_t seed,
                                                               const TripleSearchOptions& opts = {})
{
    return find_equilateral_triples(d, Scale::exact_side(side), m, seed, opts);
}

enum class Aggregate { mean, median };

struct ProfileOptions {
    double m = 0.1;                 ///< sampled fraction of vertices per scale
    std::uint64_t seed = 0;
    std::optional<double> side_bin; ///< bin width; unset means exact sides on integer metrics
    Aggregate aggregate = Aggregate::mean;
    std::vector<std::size_t> vertex_subset;
    unsigned workers = 0;
};

struct ProfileRecord {
    double r = 0.0;
    std::vector<double> rho_values; ///< in triple order
    std::vector<EquilateralTriple> triples;
    std::size_t count = 0;
    double mean_rho = 0.0;
    double median_rho = 0.0;

    double typical(Aggregate a) const noexcept { return a == Aggregate::mean ? mean_rho : median_rho; }
};

struct ProfileMeta {
    std::size_t n = 0;
    double m = 0.0;
    std::uint64_t seed = 0;
    double side_bin = 0.0; ///< 0 when sides are exact
    double diameter = 0.0;
    Aggregate aggregate = Aggregate::mean;
};

struct CurvatureProfile {
    std::vector<ProfileRecord> records; ///< strictly increasing r
    ProfileMeta meta;

    bool empty() const noexcept { return records.empty(); }

    std::size_t triangle_count() const noexcept
    {
        std::size_t c = 0;
        for (const auto& r : records)
            c += r.count;
        return c;
    }
};

/// Scales examined by build_profile, in ascending order.
///
/// Integer metrics without an explicit bin use sides 1, 2, ..., diameter.
/// Otherwise sides are binned into (b h, (b + 1) h] for b >= 1. The first
/// bin (0, h] is skipped: any three distances below h share it, including
/// collinear triples, so it cannot certify an equilateral shape.
inline std::vector<Scale> profile_scales(const DistanceMatrix& d, std::optional<double> side_bin)
{
    std::vector<Scale> out;
    const double diam = d.diameter();
    if (!(diam > 0.0))
        return out;
    if (!side_bin && d.is_integral()) {
        for (double s = 1.0; s <= diam; s += 1.0)
            out.push_back(Scale::exact_side(s));
        return out;
    }
    const double h = side_bin ? *side_bin : diam / 50.0;
    if (!(h > 0.0))
        throw parameter_error("side bin width must be positive");
    const auto bins = static_cast<std::size_t>(std::ceil(diam / h));
    for (std::size_t b = 1; b < bins; ++b)
        out.push_back(Scale::bin(static_cast<double>(b) * h, static_cast<double>(b + 1) * h, b));
    return out;
}

namespace detail {

inline double median_of(std::vector<double> v)
{
    if (v.empty())
        return 0.0;
    std::sort(v.begin(), v.end());
    std::size_t k = v.size() / 2;
    return v.size() % 2 ? v[k] : (v[k - 1] + v[k]) / 2.0;
}

} // namespace detail

/// Curvature profile of a metric: for every scale, sampled equilateral
/// triples and their expansion factors. Scales without triples are omitted.
inline CurvatureProfile build_profile(const DistanceMatrix& d, const ProfileOptions& opts = {})
{
    if (!(opts.m > 0.0) || opts.m > 1.0)
        throw parameter_error("build_profile: sample fraction m must lie in (0, 1]");
    CurvatureProfile p;
    p.meta.n = d.size();
    p.meta.m = opts.m;
    p.meta.seed = opts.seed;
    p.meta.diameter = d.diameter();
    p.meta.aggregate = opts.aggregate;
    if (d.size() < 3)
        return p;

    const auto scales = profile_scales(d, opts.side_bin);
    if (!scales.empty() && !scales.front().exact)
        p.meta.side_bin = scales.front().hi - scales.front().lo;

    TripleSearchOptions search{opts.vertex_subset, opts.workers};
    for (const auto& scale : scales) {
        auto triples = find_equilateral_triples(d, scale, opts.m, opts.seed, search);
        if (triples.empty())
            continue;
        ProfileRecord rec;
        rec.r = scale.side / 2.0;
        rec.rho_values.resize(triples.size());
        parallel_for(triples.size(), opts.workers, [&](std::size_t i) {
            rec.rho_values[i] = rho_minmax(d, triples[i]).rho;
        });
        double sum = 0.0;
        for (std::size_t i = 0; i < triples.size(); ++i) {
            double rho = rec.rho_values[i];
            if (!(rho >= 1.0 - rho_range_slack && rho <= 2.0 + rho_range_slack))
                throw internal_error("expansion factor " + std::to_string(rho) +
                                     " outside [1, 2] for triple (" +
                                     std::to_string(triples[i].v1) + ", " +
                                     std::to_string(triples[i].v2) + ", " +
                                     std::to_string(triples[i].v3) + ")");
            sum += rho;
        }
        rec.count = triples.size();
        rec.mean_rho = sum / static_cast<double>(rec.count);
        rec.median_rho = detail::median_of(rec.rho_values);
        rec.triples = std::move(triples);
        p.records.push_back(std::move(rec));
    }
    return p;
}

/// Hybrid sampling: partition vertices around `clusters` farthest-point
/// centers and draw up to `per_cluster` vertices from each partition.
/// Returns a sorted vertex subset usable as ProfileOptions::vertex_subset.
inline std::vector<std::size_t> cluster_sample(const DistanceMatrix& d, std::size_t clusters,
                                               std::size_t per_cluster, std::uint64_t seed)
{
    const std::size_t n = d.size();
    if (clusters == 0 || per_cluster == 0)
        throw parameter_error("cluster_sample: clusters and per_cluster must be positive");
    if (n == 0)
        return {};
    clusters = std::min(clusters, n);
    std::vector<std::size_t> centers{0};
    std::vector<double> nearest(d.row(0).begin(), d.row(0).end());
    while (centers.size() < clusters) {
        std::size_t far = static_cast<std::size_t>(
            std::max_element(nearest.begin(), nearest.end()) - nearest.begin());
        centers.push_back(far);
        for (std::size_t v = 0; v < n; ++v)
            nearest[v] = std::min(nearest[v], d(far, v));
    }
    std::vector<std::vector<std::size_t>> members(clusters);
    for (std::size_t v = 0; v < n; ++v) {
        std::size_t best = 0;
        for (std::size_t c = 1; c < clusters; ++c)
            if (d(centers[c], v) < d(centers[best], v))
                best = c;
        members[best].push_back(v);
    }
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> out;
    for (auto& group : members) {
        std::shuffle(group.begin(), group.end(), rng);
        group.resize(std::min(group.size(), per_cluster));
        out.insert(out.end(), group.begin(), group.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace sectional
