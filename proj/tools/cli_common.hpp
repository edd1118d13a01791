#pragma once

#include <sectional/sectional.hpp>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace secprof {

using namespace sectional;
using json = nlohmann::json;
namespace fs = std::filesystem;

enum exit_code : int { ok = 0, input_failure = 2, empty_failure = 3, internal_failure = 4 };

inline std::uint64_t env_seed()
{
    if (const char* s = std::getenv("SECPROF_SEED"))
        return std::strtoull(s, nullptr, 10);
    return 0;
}

inline unsigned env_workers()
{
    if (const char* s = std::getenv("SECPROF_WORKERS"))
        return static_cast<unsigned>(std::strtoul(s, nullptr, 10));
    return 0;
}

/// Options describing where the data comes from and how a point cloud is
/// turned into a graph.
struct InputOptions {
    std::string path;
    std::string format = "auto"; // auto | edges | dmatrix | points
    std::string metric = "euclidean";
    std::size_t k = 0;
    double eps = 0.0;
    std::size_t k_min = 0;
    std::size_t k_max = 0;
    std::string direction = "asc";

    bool has_graph_rule() const { return k > 0 || eps > 0.0 || k_min > 0 || k_max > 0; }

    io::InputFormat resolved_format() const
    {
        if (format == "edges")
            return io::InputFormat::edges;
        if (format == "dmatrix")
            return io::InputFormat::distance_matrix;
        if (format == "points")
            return io::InputFormat::points;
        if (!fs::exists(path))
            throw input_error("cannot open " + path);
        return io::detect_input_format(path);
    }

    json to_json() const
    {
        return {{"input", path},   {"format", format}, {"metric", metric},   {"k", k},
                {"eps", eps},      {"kmin", k_min},    {"kmax", k_max},      {"density_k_direction", direction}};
    }
};

/// A metric ready for profiling, plus what was done to obtain it.
struct LoadedMetric {
    DistanceMatrix distances;
    std::optional<PointCloud> points;     ///< set for point-cloud input
    std::optional<DistanceMatrix> ambient; ///< metric the graph was built from, if any
    std::string route;
};

template <metric_source M>
NeighborhoodGraph build_neighborhood(const M& metric, const InputOptions& in, unsigned workers)
{
    auto dir = in.direction == "desc" ? DensityDirection::descending : DensityDirection::ascending;
    if (in.k_min > 0 || in.k_max > 0) {
        std::size_t lo = in.k_min > 0 ? in.k_min : in.k_max;
        std::size_t hi = in.k_max > 0 ? in.k_max : in.k_min;
        return adaptive_graph(metric, lo, hi, dir, workers);
    }
    if (in.k > 0)
        return knn_graph(metric, in.k, workers);
    if (in.eps > 0.0)
        return epsilon_graph(metric, in.eps);
    throw parameter_error("building a neighborhood graph needs --k, --eps, or --kmin/--kmax");
}

inline DistanceMatrix euclidean_matrix(const PointCloud& pc)
{
    const std::size_t n = pc.size();
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            d[i * n + j] = d[j * n + i] = pc.distance(i, j);
    return DistanceMatrix::from_dense(n, std::move(d));
}

/// Loads the input and routes it: edge lists become graph metrics, point
/// clouds pass through graph construction, distance matrices are used as
/// given unless a graph rule with --metric precomputed is requested.
inline LoadedMetric load_metric(const InputOptions& in, unsigned workers)
{
    LoadedMetric out;
    switch (in.resolved_format()) {
    case io::InputFormat::edges: {
        auto g = io::read_edge_list(in.path);
        out.distances = shortest_path_matrix(g, workers);
        out.route = "edges->shortest_paths";
        break;
    }
    case io::InputFormat::distance_matrix: {
        auto d = io::read_distance_matrix_csv(in.path);
        if (in.has_graph_rule() && in.metric == "precomputed") {
            auto g = build_neighborhood(d, in, workers);
            out.distances = shortest_path_matrix(g.graph, workers);
            out.route = std::string("dmatrix->") + to_string(g.params.rule) + "->shortest_paths";
            out.ambient = std::move(d);
        } else {
            out.distances = std::move(d);
            out.route = "dmatrix";
        }
        break;
    }
    case io::InputFormat::points: {
        auto pc = io::read_point_cloud_csv(in.path);
        if (in.metric == "precomputed")
            throw parameter_error("--metric precomputed needs a distance-matrix input");
        auto g = build_neighborhood(pc, in, workers);
        out.distances = shortest_path_matrix(g.graph, workers);
        out.route = std::string("points->") + to_string(g.params.rule) + "->shortest_paths";
        out.points = std::move(pc);
        break;
    }
    }
    return out;
}

/// Parses "1,2,5" or "1-8" (or a mix such as "1-3,6").
inline std::vector<std::size_t> parse_dims(const std::string& spec)
{
    std::vector<std::size_t> out;
    std::size_t start = 0;
    while (start <= spec.size()) {
        auto end = spec.find(',', start);
        auto item = spec.substr(start, end == std::string::npos ? std::string::npos : end - start);
        if (!item.empty()) {
            auto dash = item.find('-');
            try {
                if (dash == std::string::npos) {
                    out.push_back(std::stoul(item));
                } else {
                    auto lo = std::stoul(item.substr(0, dash));
                    auto hi = std::stoul(item.substr(dash + 1));
                    if (lo > hi)
                        throw parameter_error("bad dimension range " + item);
                    for (auto d = lo; d <= hi; ++d)
                        out.push_back(d);
                }
            } catch (const std::logic_error&) {
                throw parameter_error("bad dimension list '" + spec + "'");
            }
        }
        if (end == std::string::npos)
            break;
        start = end + 1;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.empty() || out.front() == 0)
        throw parameter_error("dimension list must contain positive integers");
    return out;
}

inline std::ofstream open_output(const fs::path& p)
{
    if (p.has_parent_path())
        fs::create_directories(p.parent_path());
    std::ofstream out(p);
    if (!out)
        throw input_error("cannot write " + p.string());
    return out;
}

inline void write_gnuplot_script(const fs::path& script, const fs::path& summary_csv,
                                 const std::string& column)
{
    auto out = open_output(script);
    out << "set datafile separator ','\n"
        << "set xlabel 'r'\nset ylabel '" << column << "'\n"
        << "set yrange [0.9:2.1]\n"
        << "plot '" << summary_csv.filename().string()
        << "' every ::1 using 1:3:(1+log($2)) with points pt 7 ps variable title '" << column
        << "', \\\n"
        << "  " << reference_rho::tree << " dt 2 title 'tree', \\\n"
        << "  " << io::format_double(reference_rho::euclidean) << " dt 2 title 'euclidean', \\\n"
        << "  " << reference_rho::circle << " dt 2 title 'circle'\n";
}

} // namespace secprof
