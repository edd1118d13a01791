#pragma once

#include "sectional/distance_matrix.hpp"
#include "sectional/error.hpp"
#include "sectional/graph_build.hpp"
#include "sectional/io.hpp"
#include "sectional/metric_core.hpp"
#include "sectional/point_cloud.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace sectional {

struct EmbeddingResult {
    PointCloud points;
    std::vector<double> eigenvalues;  ///< full spectrum of the centered Gram matrix, descending
    std::size_t d = 0;
    double stress = 0.0;              ///< Kruskal stress-1 of the embedded distances
    std::size_t clamped = 0;          ///< used eigenvalues that were negative and set to 0
    double negative_mass = 0.0;       ///< sum of |lambda| over all negative eigenvalues
    std::vector<std::size_t> vertices; ///< input index of each embedded row
};

/// Eigendecomposition of the double-centered squared distances. Computing
/// it once serves every target dimension.
class MdsBasis {
public:
    explicit MdsBasis(DistanceMatrix input) : source_(std::move(input))
    {
        const DistanceMatrix& d = source_;
        if (d.has_sentinel())
            throw parameter_error("classical_mds: distance matrix must be connected (sentinel present)");
        const auto n = static_cast<Eigen::Index>(d.size());
        if (n < 2)
            throw parameter_error("classical_mds: need at least 2 points");
        Eigen::MatrixXd sq(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) {
                double x = d(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
                sq(i, j) = x * x;
            }
        Eigen::VectorXd row_mean = sq.rowwise().mean();
        double grand = row_mean.mean();
        Eigen::MatrixXd b(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                b(i, j) = -0.5 * (sq(i, j) - row_mean(i) - row_mean(j) + grand);

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
        if (solver.info() != Eigen::Success)
            throw internal_error("classical_mds: eigensolver failed");
        // Eigen sorts ascending.
        values_ = solver.eigenvalues().reverse();
        vectors_ = solver.eigenvectors().rowwise().reverse();
        for (Eigen::Index c = 0; c < n; ++c) {
            Eigen::Index arg = 0;
            vectors_.col(c).cwiseAbs().maxCoeff(&arg);
            if (vectors_(arg, c) < 0.0)
                vectors_.col(c) *= -1.0;
        }
    }

    std::size_t size() const noexcept { return static_cast<std::size_t>(values_.size()); }

    EmbeddingResult embed(std::size_t dim) const
    {
        const std::size_t n = size();
        if (dim < 1 || dim >= n)
            throw parameter_error("classical_mds: need 1 <= d < n (d=" + std::to_string(dim) +
                                  ", n=" + std::to_string(n) + ")");
        EmbeddingResult out;
        out.d = dim;
        out.eigenvalues.assign(values_.data(), values_.data() + values_.size());
        for (double v : out.eigenvalues)
            if (v < 0.0)
                out.negative_mass -= v;
        std::vector<double> coords(n * dim);
        for (std::size_t c = 0; c < dim; ++c) {
            double lambda = values_(static_cast<Eigen::Index>(c));
            if (lambda < 0.0) {
                ++out.clamped;
                lambda = 0.0;
            }
            double s = std::sqrt(lambda);
            for (std::size_t i = 0; i < n; ++i)
                coords[i * dim + c] =
                    s * vectors_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c));
        }
        out.points = PointCloud(n, dim, std::move(coords));
        out.vertices.resize(n);
        std::iota(out.vertices.begin(), out.vertices.end(), std::size_t{0});

        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                double orig = source_(i, j);
                double diff = orig - out.points.distance(i, j);
                num += diff * diff;
                den += orig * orig;
            }
        out.stress = den > 0.0 ? std::sqrt(num / den) : 0.0;
        return out;
    }

private:
    DistanceMatrix source_;
    Eigen::VectorXd values_;
    Eigen::MatrixXd vectors_;
};

/// Classical (Torgerson) MDS into d dimensions.
inline EmbeddingResult classical_mds(const DistanceMatrix& d, std::size_t dim)
{
    if (dim < 1 || dim >= d.size())
        throw parameter_error("classical_mds: need 1 <= d < n");
    return MdsBasis(d).embed(dim);
}

/// Vertices of the largest connected component, ascending; ties go to the
/// component containing the smaller vertex.
inline std::vector<std::size_t> largest_component(const DistanceMatrix& d)
{
    auto label = d.component_labels();
    std::size_t labels = label.empty() ? 0 : *std::max_element(label.begin(), label.end()) + 1;
    std::vector<std::size_t> sizes(labels, 0);
    for (auto l : label)
        ++sizes[l];
    auto best = static_cast<std::size_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < label.size(); ++v)
        if (label[v] == best)
            out.push_back(v);
    return out;
}

/// Geodesic distances on the symmetric kNN graph; restricted to the largest
/// component (with a warning) when the graph is disconnected.
template <metric_source M>
std::pair<DistanceMatrix, std::vector<std::size_t>> isomap_geodesics(const M& metric, std::size_t k,
                                                                     unsigned workers = 0)
{
    auto g = knn_graph(metric, k, workers);
    auto geo = shortest_path_matrix(g.graph, workers);
    std::vector<std::size_t> keep(geo.size());
    std::iota(keep.begin(), keep.end(), std::size_t{0});
    if (geo.has_sentinel()) {
        keep = largest_component(geo);
        std::clog << "isomap: kNN graph is disconnected; embedding the largest component ("
                  << keep.size() << " of " << geo.size() << " points)\n";
        geo = geo.submatrix(keep);
    }
    return {std::move(geo), std::move(keep)};
}

/// Isomap: classical MDS of kNN-graph geodesic distances.
template <metric_source M>
EmbeddingResult isomap(const M& metric, std::size_t k, std::size_t dim, unsigned workers = 0)
{
    auto [geo, keep] = isomap_geodesics(metric, k, workers);
    auto out = classical_mds(geo, dim);
    out.vertices = std::move(keep);
    return out;
}

/// Reads an embedding produced elsewhere (one row per point, optional
/// header). When expected_rows is given, the row count must match it.
inline PointCloud load_external_embedding(const std::filesystem::path& path,
                                          std::optional<std::size_t> expected_rows = std::nullopt)
{
    auto pc = io::read_point_cloud_csv(path);
    if (expected_rows && pc.size() != *expected_rows)
        throw input_error(path.string() + ": embedding has " + std::to_string(pc.size()) +
                          " rows but the dataset has " + std::to_string(*expected_rows) + " points");
    return pc;
}

} // namespace sectional
