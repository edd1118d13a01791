#pragma once

#include "sectional/error.hpp"

#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace sectional {

/// n points in R^dim, stored row-major.
class PointCloud {
public:
    PointCloud() = default;

    PointCloud(std::size_t n, std::size_t dim, std::vector<double> coords)
        : n_(n), dim_(dim), coords_(std::move(coords))
    {
        if (coords_.size() != n_ * dim_)
            throw input_error("point cloud needs " + std::to_string(n_ * dim_) +
                              " coordinates, got " + std::to_string(coords_.size()));
        if (n_ < 2)
            throw input_error("point cloud needs at least 2 points");
        if (dim_ == 0)
            throw input_error("point cloud dimension must be positive");
        for (double x : coords_)
            if (!std::isfinite(x))
                throw input_error("point cloud contains NaN or infinite coordinates");
    }

    std::size_t size() const noexcept { return n_; }
    std::size_t dim() const noexcept { return dim_; }
    std::span<const double> coords() const noexcept { return coords_; }

    std::span<const double> point(std::size_t i) const noexcept
    {
        return {coords_.data() + i * dim_, dim_};
    }

    double operator()(std::size_t i, std::size_t k) const noexcept
    {
        return coords_[i * dim_ + k];
    }

    /// Euclidean distance between points i and j.
    double distance(std::size_t i, std::size_t j) const noexcept
    {
        const double* a = coords_.data() + i * dim_;
        const double* b = coords_.data() + j * dim_;
        double s = 0.0;
        for (std::size_t k = 0; k < dim_; ++k) {
            double t = a[k] - b[k];
            s += t * t;
        }
        return std::sqrt(s);
    }

private:
    std::size_t n_ = 0;
    std::size_t dim_ = 0;
    std::vector<double> coords_;
};

/// Anything graph construction can measure: a point cloud under the
/// Euclidean metric or a precomputed DistanceMatrix.
template <typename M>
concept metric_source = requires(const M& m, std::size_t i, std::size_t j) {
    { m.size() } -> std::convertible_to<std::size_t>;
    { m.distance(i, j) } -> std::convertible_to<double>;
};

} // namespace sectional
