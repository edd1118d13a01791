#pragma once

#include "sectional/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sectional {

/// Multiplier applied to the largest finite distance to obtain the value
/// stored for pairs in different connected components.
inline constexpr double sentinel_factor = 100.0;

/// Symmetric n x n matrix of nonnegative distances.
///
/// Pairs that are not connected hold a finite sentinel equal to
/// sentinel_factor times the largest finite entry. The sentinel keeps the
/// matrix finite for downstream numerics, but it is not a distance:
/// connected() is false for such pairs and diameter() ignores them.
class DistanceMatrix {
public:
    DistanceMatrix() = default;

    /// Builds from row-major values. Non-finite entries mark disconnected
    /// pairs and are replaced by the sentinel.
    static DistanceMatrix from_dense(std::size_t n, std::vector<double> values)
    {
        if (values.size() != n * n)
            throw input_error("distance matrix needs " + std::to_string(n * n) + " entries, got " +
                              std::to_string(values.size()));
        DistanceMatrix m;
        m.n_ = n;
        m.d_ = std::move(values);
        bool disconnected = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (m.d_[i * n + i] != 0.0)
                throw input_error("distance matrix has nonzero diagonal at " + std::to_string(i));
            for (std::size_t j = i + 1; j < n; ++j) {
                double a = m.d_[i * n + j];
                double b = m.d_[j * n + i];
                if (std::isnan(a) || std::isnan(b))
                    throw input_error("distance matrix contains NaN");
                if (a < 0.0 || b < 0.0)
                    throw input_error("distance matrix contains a negative entry");
                if (a != b && !(std::isinf(a) && std::isinf(b)))
                    throw input_error("distance matrix is not symmetric at (" + std::to_string(i) +
                                      ", " + std::to_string(j) + ")");
                if (std::isinf(a))
                    disconnected = true;
                else
                    m.diameter_ = std::max(m.diameter_, a);
            }
        }
        if (disconnected) {
            // A graph with no finite positive distance still needs a sentinel above 0.
            double base = m.diameter_ > 0.0 ? m.diameter_ : 1.0;
            m.sentinel_ = sentinel_factor * base;
            for (auto& x : m.d_)
                if (std::isinf(x))
                    x = *m.sentinel_;
        }
        return m;
    }

    std::size_t size() const noexcept { return n_; }
    bool empty() const noexcept { return n_ == 0; }

    double operator()(std::size_t i, std::size_t j) const noexcept { return d_[i * n_ + j]; }

    /// Same as operator(); lets the matrix act as a precomputed metric.
    double distance(std::size_t i, std::size_t j) const noexcept { return d_[i * n_ + j]; }

    std::span<const double> row(std::size_t i) const noexcept
    {
        return {d_.data() + i * n_, n_};
    }

    std::span<const double> values() const noexcept { return d_; }

    bool connected(std::size_t i, std::size_t j) const noexcept
    {
        return !sentinel_ || d_[i * n_ + j] < *sentinel_;
    }

    const std::optional<double>& sentinel() const noexcept { return sentinel_; }
    bool has_sentinel() const noexcept { return sentinel_.has_value(); }

    /// Largest finite (non-sentinel) distance.
    double diameter() const noexcept { return diameter_; }

    /// True when every finite entry is an integer (hop-count metrics).
    bool is_integral() const noexcept
    {
        for (double x : d_)
            if (x != std::floor(x))
                return false;
        return true;
    }

    /// Smallest positive finite distance, or 0 if none exists.
    double min_positive() const noexcept
    {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < d_.size(); ++i)
            if (d_[i] > 0.0 && (!sentinel_ || d_[i] < *sentinel_))
                best = std::min(best, d_[i]);
        return std::isinf(best) ? 0.0 : best;
    }

    /// Every distance multiplied by c > 0; the sentinel scales along.
    DistanceMatrix scaled(double c) const
    {
        if (!(c > 0.0) || !std::isfinite(c))
            throw parameter_error("scale factor must be positive and finite");
        DistanceMatrix m = *this;
        for (auto& x : m.d_)
            x *= c;
        m.diameter_ *= c;
        if (m.sentinel_)
            *m.sentinel_ *= c;
        return m;
    }

    /// Restriction to the given vertices, in the given order.
    DistanceMatrix submatrix(std::span<const std::size_t> ids) const
    {
        std::size_t k = ids.size();
        std::vector<double> vals(k * k);
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b) {
                double x = (*this)(ids[a], ids[b]);
                vals[a * k + b] = connected(ids[a], ids[b])
                                      ? x
                                      : std::numeric_limits<double>::infinity();
            }
        return from_dense(k, std::move(vals));
    }

    /// Connected-component label per vertex; labels are numbered in order of
    /// each component's smallest vertex.
    std::vector<std::size_t> component_labels() const
    {
        constexpr auto unset = std::numeric_limits<std::size_t>::max();
        std::vector<std::size_t> label(n_, unset);
        std::size_t next = 0;
        for (std::size_t i = 0; i < n_; ++i) {
            if (label[i] != unset)
                continue;
            for (std::size_t j = i; j < n_; ++j)
                if (label[j] == unset && connected(i, j))
                    label[j] = next;
            ++next;
        }
        return label;
    }

private:
    std::size_t n_ = 0;
    std::vector<double> d_;
    std::optional<double> sentinel_;
    double diameter_ = 0.0;
};

} // namespace sectional
