#pragma once

#include "sectional/curvature_profile.hpp"
#include "sectional/distance_matrix.hpp"
#include "sectional/error.hpp"
#include "sectional/graph.hpp"
#include "sectional/point_cloud.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace sectional::io {

using json = nlohmann::json;

/// Shortest decimal text that reads back to the same double.
inline std::string format_double(double x)
{
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

namespace detail {

inline std::string_view trim(std::string_view s) noexcept
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

inline std::optional<double> parse_double(std::string_view s) noexcept
{
    s = trim(s);
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    if (s.empty())
        return std::nullopt;
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        return std::nullopt;
    return v;
}

inline std::vector<std::string_view> split(std::string_view line, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        std::size_t pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos)
            return out;
        start = pos + 1;
    }
}

inline std::ifstream open_in(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw input_error("cannot open " + path.string());
    return in;
}

inline std::ofstream open_out(const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out)
        throw input_error("cannot write " + path.string());
    return out;
}

} // namespace detail

/// Numeric table from comma-separated text. A first row containing any
/// non-numeric cell is treated as a header and skipped; lines starting with
/// '#' and blank lines are ignored.
struct NumericTable {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;
    bool had_header = false;
};

inline NumericTable read_csv(std::istream& in, const std::string& name = "csv")
{
    NumericTable t;
    std::string line;
    std::size_t line_no = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++line_no;
        auto view = detail::trim(line);
        if (view.empty() || view.front() == '#')
            continue;
        auto cells = detail::split(view, ',');
        std::vector<double> row;
        row.reserve(cells.size());
        bool numeric = true;
        for (auto c : cells) {
            auto v = detail::parse_double(c);
            if (!v) {
                numeric = false;
                break;
            }
            row.push_back(*v);
        }
        if (!numeric) {
            if (first) {
                t.had_header = true;
                first = false;
                continue;
            }
            throw input_error(name + ":" + std::to_string(line_no) + ": non-numeric cell");
        }
        first = false;
        if (t.rows == 0)
            t.cols = row.size();
        else if (row.size() != t.cols)
            throw input_error(name + ":" + std::to_string(line_no) + ": expected " +
                              std::to_string(t.cols) + " columns, got " +
                              std::to_string(row.size()));
        t.values.insert(t.values.end(), row.begin(), row.end());
        ++t.rows;
    }
    return t;
}

inline NumericTable read_csv(const std::filesystem::path& path)
{
    auto in = detail::open_in(path);
    return read_csv(in, path.string());
}

inline PointCloud read_point_cloud_csv(const std::filesystem::path& path)
{
    auto t = read_csv(path);
    if (t.rows == 0)
        throw input_error(path.string() + ": no data rows");
    return PointCloud(t.rows, t.cols, std::move(t.values));
}

inline void write_point_cloud_csv(std::ostream& out, const PointCloud& pc)
{
    for (std::size_t i = 0; i < pc.size(); ++i) {
        for (std::size_t k = 0; k < pc.dim(); ++k) {
            if (k)
                out << ',';
            out << format_double(pc(i, k));
        }
        out << '\n';
    }
}

inline void write_point_cloud_csv(const std::filesystem::path& path, const PointCloud& pc)
{
    auto out = detail::open_out(path);
    write_point_cloud_csv(out, pc);
}

/// Square, header-free CSV. Disconnected pairs may be written as "inf".
inline DistanceMatrix read_distance_matrix_csv(const std::filesystem::path& path)
{
    auto t = read_csv(path);
    if (t.rows == 0 || t.rows != t.cols)
        throw input_error(path.string() + ": distance matrix must be square (" +
                          std::to_string(t.rows) + " x " + std::to_string(t.cols) + ")");
    return DistanceMatrix::from_dense(t.rows, std::move(t.values));
}

/// Disconnected pairs are written as "inf" so the sentinel survives a round trip.
inline void write_distance_matrix_csv(std::ostream& out, const DistanceMatrix& d)
{
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = 0; j < d.size(); ++j) {
            if (j)
                out << ',';
            out << (d.connected(i, j) ? format_double(d(i, j)) : std::string("inf"));
        }
        out << '\n';
    }
}

inline void write_distance_matrix_csv(const std::filesystem::path& path, const DistanceMatrix& d)
{
    auto out = detail::open_out(path);
    write_distance_matrix_csv(out, d);
}

/// Edge list: one `u v [w]` per line, whitespace separated, '#' comments.
/// Indices are 0-based when the smallest index is 0, 1-based otherwise.
inline Graph read_edge_list(std::istream& in, const std::string& name = "edges")
{
    struct Raw {
        long long u, v;
        double w;
    };
    std::vector<Raw> raw;
    std::string line;
    std::size_t line_no = 0;
    long long lo = std::numeric_limits<long long>::max(), hi = -1;
    while (std::getline(in, line)) {
        ++line_no;
        auto view = detail::trim(line);
        if (view.empty() || view.front() == '#')
            continue;
        std::istringstream fields{std::string(view)};
        std::string su, sv, sw, extra;
        fields >> su >> sv >> sw >> extra;
        auto u = detail::parse_double(su), v = detail::parse_double(sv);
        if (!u || !v || *u != std::floor(*u) || *v != std::floor(*v) || *u < 0 || *v < 0)
            throw input_error(name + ":" + std::to_string(line_no) + ": bad vertex index");
        double w = 1.0;
        if (!sw.empty()) {
            auto pw = detail::parse_double(sw);
            if (!pw)
                throw input_error(name + ":" + std::to_string(line_no) + ": bad weight");
            w = *pw;
        }
        if (!extra.empty())
            throw input_error(name + ":" + std::to_string(line_no) + ": too many fields");
        Raw r{static_cast<long long>(*u), static_cast<long long>(*v), w};
        lo = std::min({lo, r.u, r.v});
        hi = std::max({hi, r.u, r.v});
        raw.push_back(r);
    }
    if (raw.empty())
        throw input_error(name + ": no edges");
    const long long base = lo == 0 ? 0 : 1;
    Graph g(static_cast<std::size_t>(hi - base + 1));
    for (const auto& r : raw) {
        if (r.u == r.v)
            continue;
        g.add_edge(static_cast<std::size_t>(r.u - base), static_cast<std::size_t>(r.v - base), r.w);
    }
    return g;
}

inline Graph read_edge_list(const std::filesystem::path& path)
{
    auto in = detail::open_in(path);
    return read_edge_list(in, path.string());
}

/// Writes 0-based edges; weights are omitted when every edge has weight 1.
/// Isolated trailing vertices are not representable in this format.
inline void write_edge_list(std::ostream& out, const Graph& g)
{
    const bool unit = g.unit_weights();
    out << "# vertices " << g.vertex_count() << '\n';
    for (const auto& e : g.edges()) {
        out << e.u << ' ' << e.v;
        if (!unit)
            out << ' ' << format_double(e.w);
        out << '\n';
    }
}

inline void write_edge_list(const std::filesystem::path& path, const Graph& g)
{
    auto out = detail::open_out(path);
    write_edge_list(out, g);
}

enum class InputFormat { edges, distance_matrix, points };

inline const char* to_string(InputFormat f) noexcept
{
    switch (f) {
    case InputFormat::edges: return "edges";
    case InputFormat::distance_matrix: return "dmatrix";
    case InputFormat::points: return "points";
    }
    return "?";
}

/// Guesses the input format: non-CSV extensions are edge lists; a CSV that
/// is square, symmetric and zero on the diagonal is a distance matrix;
/// any other CSV is a point cloud.
inline InputFormat detect_input_format(const std::filesystem::path& path)
{
    auto ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext != ".csv")
        return InputFormat::edges;
    auto t = read_csv(path);
    if (t.rows == 0 || t.rows != t.cols || t.had_header)
        return InputFormat::points;
    const std::size_t n = t.rows;
    for (std::size_t i = 0; i < n; ++i) {
        if (t.values[i * n + i] != 0.0)
            return InputFormat::points;
        for (std::size_t j = i + 1; j < n; ++j) {
            double a = t.values[i * n + j], b = t.values[j * n + i];
            if (a != b || a < 0.0)
                return InputFormat::points;
        }
    }
    return InputFormat::distance_matrix;
}

inline const char* to_string(Aggregate a) noexcept
{
    return a == Aggregate::mean ? "mean" : "median";
}

/// Profile as JSON: {meta: {...}, records: [{r, count, mean_rho, median_rho, rho_values}]}.
/// `config` is embedded verbatim under meta.config.
inline json profile_to_json(const CurvatureProfile& p, const json& config = json::object())
{
    json j;
    j["meta"] = {{"n", p.meta.n},
                 {"m", p.meta.m},
                 {"seed", p.meta.seed},
                 {"side_bin", p.meta.side_bin},
                 {"diameter", p.meta.diameter},
                 {"aggregate", to_string(p.meta.aggregate)},
                 {"triangles", p.triangle_count()},
                 {"config", config}};
    j["records"] = json::array();
    for (const auto& rec : p.records)
        j["records"].push_back({{"r", rec.r},
                                {"count", rec.count},
                                {"mean_rho", rec.mean_rho},
                                {"median_rho", rec.median_rho},
                                {"rho_values", rec.rho_values}});
    return j;
}

inline CurvatureProfile profile_from_json(const json& j)
{
    try {
        CurvatureProfile p;
        const auto& meta = j.at("meta");
        p.meta.n = meta.value("n", std::size_t{0});
        p.meta.m = meta.value("m", 0.0);
        p.meta.seed = meta.value("seed", std::uint64_t{0});
        p.meta.side_bin = meta.value("side_bin", 0.0);
        p.meta.diameter = meta.value("diameter", 0.0);
        p.meta.aggregate =
            meta.value("aggregate", std::string("mean")) == "median" ? Aggregate::median
                                                                     : Aggregate::mean;
        for (const auto& r : j.at("records")) {
            ProfileRecord rec;
            rec.r = r.at("r").get<double>();
            rec.rho_values = r.at("rho_values").get<std::vector<double>>();
            rec.count = rec.rho_values.size();
            double sum = 0.0;
            for (double x : rec.rho_values)
                sum += x;
            rec.mean_rho = rec.count ? sum / static_cast<double>(rec.count) : 0.0;
            rec.median_rho = r.value("median_rho", rec.mean_rho);
            p.records.push_back(std::move(rec));
        }
        return p;
    } catch (const json::exception& e) {
        throw input_error(std::string("malformed profile JSON: ") + e.what());
    }
}

inline CurvatureProfile read_profile_json(const std::filesystem::path& path)
{
    auto in = detail::open_in(path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw input_error(path.string() + ": " + e.what());
    }
    return profile_from_json(j);
}

inline void write_config_comment(std::ostream& out, const json& config)
{
    if (!config.empty())
        out << "# config: " << config.dump() << '\n';
}

/// Long form: one `r,rho` row per triangle.
inline void write_profile_long_csv(std::ostream& out, const CurvatureProfile& p,
                                   const json& config = json::object())
{
    write_config_comment(out, config);
    out << "r,rho\n";
    for (const auto& rec : p.records)
        for (double rho : rec.rho_values)
            out << format_double(rec.r) << ',' << format_double(rho) << '\n';
}

/// One `r,count,<aggregate>_rho` row per scale.
inline void write_profile_summary_csv(std::ostream& out, const CurvatureProfile& p,
                                      const json& config = json::object())
{
    write_config_comment(out, config);
    out << "r,count," << to_string(p.meta.aggregate) << "_rho\n";
    for (const auto& rec : p.records)
        out << format_double(rec.r) << ',' << rec.count << ','
            << format_double(rec.typical(p.meta.aggregate)) << '\n';
}

} // namespace sectional::io
