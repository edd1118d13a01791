// secprof: curvature profiles of graphs and point clouds from the command line.

#include "cli_common.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

using namespace secprof;

namespace {

void add_input_options(CLI::App* cmd, InputOptions& in, bool required = true)
{
    auto* opt = cmd->add_option("-i,--input", in.path, "Edge list, distance-matrix CSV, or point-cloud CSV");
    if (required)
        opt->required();
    cmd->add_option("--format", in.format, "Input format")
        ->check(CLI::IsMember({"auto", "edges", "dmatrix", "points"}));
    cmd->add_option("--metric", in.metric, "Ambient metric for graph construction")
        ->check(CLI::IsMember({"euclidean", "precomputed"}));
    cmd->add_option("--k", in.k, "Symmetric kNN graph with this k");
    cmd->add_option("--eps", in.eps, "Epsilon-neighborhood graph radius");
    cmd->add_option("--kmin", in.k_min, "Adaptive graph: minimum neighbors");
    cmd->add_option("--kmax", in.k_max, "Adaptive graph: maximum neighbors");
    cmd->add_option("--density-k-direction", in.direction, "Denser points get more (asc) or fewer (desc) neighbors")
        ->check(CLI::IsMember({"asc", "desc"}));
}

struct ProfileFlags {
    double m = 0.1;
    std::optional<double> side_bin;
    bool median = false;
    std::size_t clusters = 0;
    std::size_t per_cluster = 0;
};

void add_profile_options(CLI::App* cmd, ProfileFlags& f)
{
    cmd->add_option("--m", f.m, "Fraction of vertices sampled per scale")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--side-bin", f.side_bin, "Side-length bin width for weighted metrics (default: diameter/50)");
    cmd->add_flag("--median", f.median, "Summarize each scale by the median instead of the mean");
    cmd->add_option("--clusters", f.clusters, "Hybrid sampling: number of clusters");
    cmd->add_option("--per-cluster", f.per_cluster, "Hybrid sampling: vertices drawn per cluster");
}

ProfileOptions make_profile_options(const ProfileFlags& f, const DistanceMatrix& d, std::uint64_t seed,
                                    unsigned workers)
{
    ProfileOptions o;
    o.m = f.m;
    o.seed = seed;
    o.side_bin = f.side_bin;
    o.aggregate = f.median ? Aggregate::median : Aggregate::mean;
    o.workers = workers;
    if (f.clusters > 0 || f.per_cluster > 0)
        o.vertex_subset = cluster_sample(d, std::max<std::size_t>(f.clusters, 1),
                                         std::max<std::size_t>(f.per_cluster, 1), seed);
    return o;
}

json profile_flags_json(const ProfileFlags& f)
{
    return {{"m", f.m},
            {"side_bin", f.side_bin ? json(*f.side_bin) : json(nullptr)},
            {"aggregate", f.median ? "median" : "mean"},
            {"clusters", f.clusters},
            {"per_cluster", f.per_cluster}};
}

struct GridFlags {
    std::size_t r_nodes = 50;
    std::size_t rho_nodes = 50;
    bool no_normalize_r = false;
    double r_weight = 1.0;
    double rho_weight = 1.0;
};

void add_grid_options(CLI::App* cmd, GridFlags& g)
{
    cmd->add_option("--grid-r", g.r_nodes, "Grid nodes along r");
    cmd->add_option("--grid-rho", g.rho_nodes, "Grid nodes along rho");
    cmd->add_flag("--no-normalize-r", g.no_normalize_r, "Compare raw r instead of r / max r");
    cmd->add_option("--r-weight", g.r_weight, "Ground-metric weight of the r axis");
    cmd->add_option("--rho-weight", g.rho_weight, "Ground-metric weight of the rho axis");
}

GridSpec make_grid(const GridFlags& f)
{
    GridSpec g;
    g.r_nodes = f.r_nodes;
    g.rho_nodes = f.rho_nodes;
    g.normalize_r = !f.no_normalize_r;
    g.r_weight = f.r_weight;
    g.rho_weight = f.rho_weight;
    return g;
}

json grid_json(const GridSpec& g)
{
    return {{"r_nodes", g.r_nodes},     {"rho_nodes", g.rho_nodes}, {"r_min", g.r_min},
            {"r_max", g.r_max},         {"rho_min", g.rho_min},     {"rho_max", g.rho_max},
            {"normalize_r", g.normalize_r}, {"r_weight", g.r_weight}, {"rho_weight", g.rho_weight}};
}

/// Grid covering both profiles when r is compared unnormalized.
GridSpec fit_grid(GridSpec g, std::initializer_list<const CurvatureProfile*> profiles)
{
    if (!g.normalize_r)
        for (const auto* p : profiles)
            for (const auto& rec : p->records)
                g.r_max = std::max(g.r_max, rec.r);
    return g;
}

void write_profile_outputs(const CurvatureProfile& p, const fs::path& prefix, const json& config,
                           bool gnuplot)
{
    const fs::path json_path = prefix.string() + ".json";
    const fs::path long_path = prefix.string() + "_long.csv";
    const fs::path summary_path = prefix.string() + "_summary.csv";
    open_output(json_path) << io::profile_to_json(p, config).dump(2) << '\n';
    {
        auto out = open_output(long_path);
        io::write_profile_long_csv(out, p, config);
    }
    {
        auto out = open_output(summary_path);
        io::write_profile_summary_csv(out, p, config);
    }
    if (gnuplot)
        write_gnuplot_script(prefix.string() + ".gp", summary_path,
                             std::string(io::to_string(p.meta.aggregate)) + "_rho");
}

CurvatureProfile profile_points(const PointCloud& pc, const InputOptions& rule, const ProfileFlags& f,
                                std::uint64_t seed, unsigned workers)
{
    auto g = build_neighborhood(pc, rule, workers);
    auto d = shortest_path_matrix(g.graph, workers);
    return build_profile(d, make_profile_options(f, d, seed, workers));
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Sectional-curvature profiles of graphs and point clouds"};
    app.require_subcommand(1);
    std::uint64_t seed = env_seed();
    unsigned workers = env_workers();
    app.add_option("--seed", seed, "Seed for every random choice (env SECPROF_SEED)");
    app.add_option("--workers", workers, "Worker threads, 0 = all cores (env SECPROF_WORKERS)");

    // profile
    auto* profile = app.add_subcommand("profile", "Compute a curvature profile");
    InputOptions profile_in;
    ProfileFlags profile_flags;
    std::string profile_out;
    bool gnuplot = false;
    add_input_options(profile, profile_in);
    add_profile_options(profile, profile_flags);
    profile->add_option("-o,--out", profile_out, "Output prefix")->required();
    profile->add_flag("--gnuplot-script", gnuplot, "Also write a gnuplot script");

    // compare
    auto* compare = app.add_subcommand("compare", "W1 distance between two profile JSON files");
    std::string cmp_a, cmp_b, cmp_out;
    GridFlags cmp_grid;
    compare->add_option("first", cmp_a, "Profile JSON")->required();
    compare->add_option("second", cmp_b, "Profile JSON")->required();
    compare->add_option("-o,--out", cmp_out, "Write the JSON result here instead of stdout");
    add_grid_options(compare, cmp_grid);

    // embed
    auto* embed = app.add_subcommand("embed", "Classical MDS or Isomap embeddings");
    InputOptions embed_in;
    std::string embed_method = "mds", embed_dims, embed_out;
    std::size_t embed_k = 10;
    embed->add_option("-i,--input", embed_in.path, "Edge list, distance matrix, or point cloud")->required();
    embed->add_option("--format", embed_in.format)->check(CLI::IsMember({"auto", "edges", "dmatrix", "points"}));
    embed->add_option("--method", embed_method)->check(CLI::IsMember({"mds", "isomap"}));
    embed->add_option("--dim", embed_dims, "Target dimensions, e.g. 1,2,3 or 1-8")->required();
    embed->add_option("--k", embed_k, "Isomap neighbors");
    embed->add_option("-o,--out", embed_out, "Output prefix; writes <prefix>_d<d>.csv")->required();

    // generate
    auto* generate = app.add_subcommand("generate", "Synthetic spaces");
    std::string gen_kind, gen_out, gen_low_out;
    std::size_t gen_n = 1000, gen_k = 4, gen_branching = 2, gen_depth = 6, gen_branches = 10,
                gen_nodes = 300, gen_block = 60, gen_dim = 2;
    double gen_avg_degree = 4.0, gen_beta = 0.1, gen_radius = 1.0, gen_jitter = 0.0, gen_noise = 0.0;
    generate->add_option("--kind", gen_kind)
        ->required()
        ->check(CLI::IsMember({"er", "ws", "circle", "plane", "tree", "dla_tree", "gaussian_isometric"}));
    generate->add_option("-o,--out", gen_out, "Output file")->required();
    generate->add_option("--n", gen_n, "Vertex / point count");
    generate->add_option("--avg-degree", gen_avg_degree, "ER average degree");
    generate->add_option("--k", gen_k, "WS lattice degree (even)");
    generate->add_option("--beta", gen_beta, "WS rewiring probability");
    generate->add_option("--radius", gen_radius, "Circle radius");
    generate->add_option("--branching", gen_branching, "Tree branching factor");
    generate->add_option("--depth", gen_depth, "Tree depth");
    generate->add_option("--branches", gen_branches, "DLA tree branches");
    generate->add_option("--nodes-per-branch", gen_nodes, "DLA tree points per branch");
    generate->add_option("--block-dim", gen_block, "DLA tree dimensions per branch");
    generate->add_option("--length-jitter", gen_jitter, "DLA tree branch-length jitter fraction");
    generate->add_option("--noise", gen_noise, "DLA tree Gaussian coordinate noise");
    generate->add_option("--dim", gen_dim, "Intrinsic dimension for gaussian_isometric");
    generate->add_option("--low-out", gen_low_out, "gaussian_isometric: also write the low-dimensional cloud");

    // estimate-dim
    auto* estimate = app.add_subcommand("estimate-dim", "Estimate the embedding dimension by W1");
    InputOptions est_in;
    ProfileFlags est_flags;
    GridFlags est_grid;
    std::string est_method = "mds", est_dims = "1-8", est_dir, est_out;
    std::size_t est_isomap_k = 0;
    add_input_options(estimate, est_in);
    add_profile_options(estimate, est_flags);
    add_grid_options(estimate, est_grid);
    estimate->add_option("--method", est_method)->check(CLI::IsMember({"mds", "isomap"}));
    estimate->add_option("--dims", est_dims, "Candidate dimensions, e.g. 1-8");
    estimate->add_option("--isomap-k", est_isomap_k, "Isomap neighbors (default: kmin)");
    estimate->add_option("--embeddings-dir", est_dir, "Use external embedding CSVs from this directory");
    estimate->add_option("-o,--out", est_out, "Curve CSV path")->required();
    bool est_allow_empty = false;
    estimate->add_flag("--allow-empty", est_allow_empty,
                       "Score dimensions whose profile has no triangles as W1 = inf instead of failing");

    // rho
    auto* rho = app.add_subcommand("rho", "Report on a single triple");
    InputOptions rho_in;
    std::vector<std::size_t> rho_triple;
    bool rho_json = false;
    add_input_options(rho, rho_in);
    rho->add_option("--triple", rho_triple, "Three 0-based vertex indices")->required()->expected(3)->delimiter(',');
    rho->add_flag("--json", rho_json, "Print JSON instead of text");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? ok : input_failure;
    }

    try {
        if (*profile) {
            auto metric = load_metric(profile_in, workers);
            json config = {{"command", "profile"}, {"seed", seed}, {"route", metric.route}};
            config.update(profile_in.to_json());
            config.update(profile_flags_json(profile_flags));
            auto p = build_profile(metric.distances,
                                   make_profile_options(profile_flags, metric.distances, seed, workers));
            if (p.empty()) {
                std::cerr << "secprof: profile is empty (no equilateral triples at any scale)\n";
                return empty_failure;
            }
            write_profile_outputs(p, profile_out, config, gnuplot);
            std::cout << "scales " << p.records.size() << ", triangles " << p.triangle_count() << '\n';
            return ok;
        }

        if (*compare) {
            auto a = io::read_profile_json(cmp_a);
            auto b = io::read_profile_json(cmp_b);
            auto grid = fit_grid(make_grid(cmp_grid), {&a, &b});
            auto pa = to_distribution(a, grid);
            auto pb = to_distribution(b, grid);
            auto plan = wasserstein1_plan(pa, pb);
            double moved = 0.0;
            for (const auto& f : plan.flows)
                if (!(pa.support[f.source] == pb.support[f.target]))
                    moved += f.amount;
            json result = {{"w1", plan.cost},
                           {"grid", grid_json(grid)},
                           {"plan_summary",
                            {{"source_support", pa.size()},
                             {"target_support", pb.size()},
                             {"flows", plan.flows.size()},
                             {"mass_moved", moved}}},
                           {"config", {{"command", "compare"}, {"first", cmp_a}, {"second", cmp_b}}}};
            if (cmp_out.empty())
                std::cout << result.dump(2) << '\n';
            else
                open_output(cmp_out) << result.dump(2) << '\n';
            return ok;
        }

        if (*embed) {
            auto dims = parse_dims(embed_dims);
            json config = {{"command", "embed"}, {"method", embed_method}, {"dims", dims},
                           {"k", embed_k},       {"input", embed_in.path}, {"format", embed_in.format}};
            DistanceMatrix base;
            switch (embed_in.resolved_format()) {
            case io::InputFormat::edges:
                base = shortest_path_matrix(io::read_edge_list(embed_in.path), workers);
                break;
            case io::InputFormat::distance_matrix:
                base = io::read_distance_matrix_csv(embed_in.path);
                break;
            case io::InputFormat::points: {
                auto pc = io::read_point_cloud_csv(embed_in.path);
                base = euclidean_matrix(pc);
                break;
            }
            }
            if (embed_method == "isomap") {
                auto [geo, keep] = isomap_geodesics(base, embed_k, workers);
                if (keep.size() != base.size())
                    config["rows"] = keep;
                base = std::move(geo);
            }
            MdsBasis basis(base);
            for (auto d : dims) {
                auto res = basis.embed(d);
                fs::path path = embed_out + "_d" + std::to_string(d) + ".csv";
                auto out = open_output(path);
                io::write_config_comment(out, config);
                io::write_point_cloud_csv(out, res.points);
                std::cout << "d=" << d << " stress=" << res.stress << " clamped=" << res.clamped
                          << " -> " << path.string() << '\n';
            }
            return ok;
        }

        if (*generate) {
            json config = {{"command", "generate"}, {"kind", gen_kind}, {"seed", seed}};
            auto out = open_output(gen_out);
            if (gen_kind == "er" || gen_kind == "ws" || gen_kind == "tree") {
                Graph g;
                if (gen_kind == "er") {
                    config.update({{"n", gen_n}, {"avg_degree", gen_avg_degree}});
                    g = gen::erdos_renyi(gen_n, gen_avg_degree, seed);
                } else if (gen_kind == "ws") {
                    config.update({{"n", gen_n}, {"k", gen_k}, {"beta", gen_beta}});
                    g = gen::watts_strogatz(gen_n, gen_k, gen_beta, seed);
                } else {
                    config.update({{"branching", gen_branching}, {"depth", gen_depth}});
                    g = gen::tree_graph(gen_branching, gen_depth);
                }
                io::write_config_comment(out, config);
                io::write_edge_list(out, g);
            } else if (gen_kind == "circle") {
                config.update({{"n", gen_n}, {"radius", gen_radius}});
                io::write_config_comment(out, config);
                io::write_distance_matrix_csv(out, gen::circle_sample(gen_n, seed, gen_radius));
            } else if (gen_kind == "plane") {
                config.update({{"n", gen_n}});
                io::write_config_comment(out, config);
                io::write_point_cloud_csv(out, gen::plane_sample(gen_n, seed));
            } else if (gen_kind == "dla_tree") {
                gen::DlaOptions o;
                o.branches = gen_branches;
                o.nodes_per_branch = gen_nodes;
                o.block_dim = gen_block;
                o.length_jitter = gen_jitter;
                o.noise_sigma = gen_noise;
                o.seed = seed;
                config.update({{"branches", gen_branches}, {"nodes_per_branch", gen_nodes},
                               {"block_dim", gen_block}, {"length_jitter", gen_jitter}, {"noise", gen_noise}});
                io::write_config_comment(out, config);
                io::write_point_cloud_csv(out, gen::dla_tree(o));
            } else {
                config.update({{"n", gen_n}, {"dim", gen_dim}});
                auto pair = gen::gaussian_isometric(gen_n, gen_dim, seed);
                io::write_config_comment(out, config);
                io::write_point_cloud_csv(out, pair.high);
                if (!gen_low_out.empty()) {
                    auto low = open_output(gen_low_out);
                    io::write_config_comment(low, config);
                    io::write_point_cloud_csv(low, pair.low);
                }
            }
            return ok;
        }

        if (*estimate) {
            if (est_in.k_min == 0 && est_in.k_max == 0 && est_in.k == 0 && est_in.eps == 0.0) {
                est_in.k_min = 10;
                est_in.k_max = 15;
            }
            const std::size_t default_isomap_k =
                est_in.k_min > 0 ? est_in.k_min : (est_in.k > 0 ? est_in.k : 10);
            auto metric = load_metric(est_in, workers);
            auto original = build_profile(metric.distances,
                                          make_profile_options(est_flags, metric.distances, seed, workers));

            std::map<std::size_t, CurvatureProfile> embedded;
            json config = {{"command", "estimate-dim"}, {"seed", seed}, {"method", est_method},
                           {"route", metric.route}};
            config.update(est_in.to_json());
            config.update(profile_flags_json(est_flags));

            if (!est_dir.empty()) {
                config["embeddings_dir"] = est_dir;
                std::vector<fs::path> files;
                for (const auto& entry : fs::directory_iterator(est_dir))
                    if (entry.path().extension() == ".csv")
                        files.push_back(entry.path());
                std::sort(files.begin(), files.end());
                for (const auto& f : files) {
                    auto pc = load_external_embedding(f, metric.distances.size());
                    if (embedded.count(pc.dim()))
                        throw input_error("two embeddings of dimension " + std::to_string(pc.dim()) + " in " + est_dir);
                    embedded.emplace(pc.dim(), profile_points(pc, est_in, est_flags, seed, workers));
                }
            } else {
                auto dims = parse_dims(est_dims);
                config["dims"] = dims;
                DistanceMatrix base = metric.ambient ? *metric.ambient
                                    : metric.points  ? euclidean_matrix(*metric.points)
                                                     : metric.distances;
                if (est_method == "isomap") {
                    auto k = est_isomap_k > 0 ? est_isomap_k : default_isomap_k;
                    base = isomap_geodesics(base, k, workers).first;
                }
                MdsBasis basis(base);
                for (auto d : dims) {
                    auto res = basis.embed(d);
                    embedded.emplace(d, profile_points(res.points, est_in, est_flags, seed, workers));
                }
            }
            if (embedded.empty())
                throw input_error("no candidate embeddings");

            auto grid = make_grid(est_grid);
            DimensionEstimate est;
            if (embedded.size() == 1) {
                GridSpec g = grid;
                if (!g.normalize_r)
                    g = fit_grid(g, {&original, &embedded.begin()->second});
                est.d_best = embedded.begin()->first;
                est.curve.emplace_back(est.d_best, wasserstein1(to_distribution(original, g),
                                                                to_distribution(embedded.begin()->second, g)));
            } else {
                est = estimate_dimension(original, embedded, grid,
                                         est_allow_empty ? EmptyProfilePolicy::infinite
                                                         : EmptyProfilePolicy::error);
            }
            config["grid"] = grid_json(grid);
            config["allow_empty"] = est_allow_empty;

            auto out = open_output(est_out);
            io::write_config_comment(out, config);
            out << "# d_best: " << est.d_best << '\n';
            out << "d,w1\n";
            for (const auto& [d, w] : est.curve)
                out << d << ',' << io::format_double(w) << '\n';
            std::cout << "d_best=" << est.d_best << " elbow=" << first_elbow(est.curve) << '\n';
            return ok;
        }

        if (*rho) {
            auto metric = load_metric(rho_in, workers);
            const auto& d = metric.distances;
            std::size_t a = rho_triple[0], b = rho_triple[1], c = rho_triple[2];
            if (a >= d.size() || b >= d.size() || c >= d.size())
                throw parameter_error("triple vertex out of range (n=" + std::to_string(d.size()) + ")");
            if (!d.connected(a, b) || !d.connected(a, c) || !d.connected(b, c))
                throw input_error("triple spans different connected components");
            auto g = gromov_products(d(a, b), d(a, c), d(b, c));
            auto shape = lambda_measure(d(a, b), d(a, c), d(b, c));
            auto r = rho_of_triple(d, a, b, c);
            json report = {{"triple", {a, b, c}},
                           {"distances", {{"d12", d(a, b)}, {"d13", d(a, c)}, {"d23", d(b, c)}}},
                           {"gromov_products", {g.r1, g.r2, g.r3}},
                           {"lambda", shape.lambda},
                           {"equilateral", shape.is_equilateral},
                           {"degenerate", shape.is_degenerate},
                           {"rho", r.rho},
                           {"witness", r.witness}};
            if (rho_json) {
                std::cout << report.dump(2) << '\n';
            } else {
                std::cout << std::setprecision(12) << "triple      " << a << ' ' << b << ' ' << c << '\n'
                          << "distances   " << d(a, b) << ' ' << d(a, c) << ' ' << d(b, c) << '\n'
                          << "gromov      " << g.r1 << ' ' << g.r2 << ' ' << g.r3 << '\n'
                          << "lambda      " << shape.lambda << '\n'
                          << "rho         " << r.rho << '\n'
                          << "witness     " << r.witness << '\n';
            }
            return ok;
        }
    } catch (const input_error& e) {
        std::cerr << "secprof: " << e.what() << '\n';
        return input_failure;
    } catch (const parameter_error& e) {
        std::cerr << "secprof: " << e.what() << '\n';
        return input_failure;
    } catch (const empty_result_error& e) {
        std::cerr << "secprof: " << e.what() << '\n';
        return empty_failure;
    } catch (const std::exception& e) {
        std::cerr << "secprof: internal error: " << e.what() << '\n';
        return internal_failure;
    }
    return ok;
}
