#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

using namespace sectional;

namespace {

std::vector<std::pair<std::size_t, std::size_t>> edge_set(const Graph& g)
{
    std::vector<std::pair<std::size_t, std::size_t>> e;
    for (const auto& x : g.edges())
        e.emplace_back(std::min(x.u, x.v), std::max(x.u, x.v));
    std::sort(e.begin(), e.end());
    return e;
}

} // namespace

TEST(ErdosRenyi, EdgeCountWithinFiveSigma)
{
    auto g = gen::erdos_renyi(1000, 4.0, 1);
    const double pairs = 1000.0 * 999.0 / 2.0, p = 4.0 / 999.0;
    const double sigma = std::sqrt(pairs * p * (1 - p));
    EXPECT_NEAR(static_cast<double>(g.edge_count()), pairs * p, 5 * sigma);
}

TEST(ErdosRenyi, FullDegreeIsComplete)
{
    EXPECT_EQ(gen::erdos_renyi(20, 19.0, 3).edge_count(), 190u);
    EXPECT_EQ(gen::erdos_renyi(20, 19.0 - 1e-14, 3).edge_count(), 190u);
}

TEST(ErdosRenyi, DeterministicAndValidated)
{
    EXPECT_EQ(edge_set(gen::erdos_renyi(200, 3.0, 9)), edge_set(gen::erdos_renyi(200, 3.0, 9)));
    EXPECT_NE(edge_set(gen::erdos_renyi(200, 3.0, 9)), edge_set(gen::erdos_renyi(200, 3.0, 10)));
    EXPECT_THROW(gen::erdos_renyi(1, 1.0, 0), parameter_error);
    EXPECT_THROW(gen::erdos_renyi(10, 0.0, 0), parameter_error);
    EXPECT_THROW(gen::erdos_renyi(10, 10.0, 0), parameter_error);
}

TEST(WattsStrogatz, RingLattice)
{
    auto g = gen::watts_strogatz(30, 6, 0.0, 1);
    for (std::size_t v = 0; v < 30; ++v)
        EXPECT_EQ(g.degree(v), 6u);
    EXPECT_EQ(edge_set(gen::watts_strogatz(12, 2, 0.0, 1)), edge_set(fixtures::cycle(12)));
}

TEST(WattsStrogatz, RewiringPreservesEdgeCount)
{
    auto g = gen::watts_strogatz(1000, 4, 0.1, 5);
    EXPECT_EQ(g.edge_count(), 2000u);
    double mean = 0.0;
    for (std::size_t v = 0; v < 1000; ++v)
        mean += static_cast<double>(g.degree(v));
    EXPECT_DOUBLE_EQ(mean / 1000.0, 4.0);
    auto e = edge_set(g);
    EXPECT_EQ(std::set(e.begin(), e.end()).size(), e.size());
    for (auto [u, v] : e)
        EXPECT_NE(u, v);
    EXPECT_EQ(e, edge_set(gen::watts_strogatz(1000, 4, 0.1, 5)));
    EXPECT_NE(e, edge_set(gen::watts_strogatz(1000, 4, 0.0, 5)));
}

TEST(WattsStrogatz, Validation)
{
    EXPECT_THROW(gen::watts_strogatz(10, 3, 0.1, 0), parameter_error);
    EXPECT_THROW(gen::watts_strogatz(10, 10, 0.1, 0), parameter_error);
    EXPECT_THROW(gen::watts_strogatz(10, 4, 1.5, 0), parameter_error);
}

TEST(Circle, EquidistantAndAntipodal)
{
    const double pi = std::numbers::pi;
    auto d = gen::circle_metric({0.0, 2 * pi / 3, 4 * pi / 3});
    for (auto [i, j] : {std::pair{0, 1}, {0, 2}, {1, 2}})
        EXPECT_NEAR(d(i, j), 2 * pi / 3, 1e-15);
    EXPECT_NEAR(gen::arc_distance(0.0, pi), pi, 1e-15);
    EXPECT_NEAR(gen::arc_distance(0.1, 2 * pi - 0.1), 0.2, 1e-14);
}

TEST(Circle, RadiusScalesDistancesNotRho)
{
    auto a = gen::circle_sample(60, 4, 1.0);
    auto b = gen::circle_sample(60, 4, 3.0);
    for (std::size_t i = 0; i < 60; ++i)
        for (std::size_t j = 0; j < 60; ++j)
            EXPECT_NEAR(b(i, j), 3.0 * a(i, j), 1e-12);
    for (std::size_t t = 0; t < 20; ++t) {
        std::size_t x = t, y = t + 20, z = t + 40;
        EXPECT_NEAR(rho_of_triple(a, x, y, z).rho, rho_of_triple(b, x, y, z).rho, 1e-12);
    }
    EXPECT_THROW(gen::circle_sample(2, 0), parameter_error);
}

TEST(Plane, UnitSquareAndReproducible)
{
    auto a = gen::plane_sample(500, 2);
    for (double x : a.coords()) {
        EXPECT_GE(x, 0.0);
        EXPECT_LT(x, 1.0);
    }
    auto b = gen::plane_sample(500, 2);
    EXPECT_TRUE(std::equal(a.coords().begin(), a.coords().end(), b.coords().begin()));
}

TEST(Tree, StarAndNodeCount)
{
    auto star = gen::tree_graph(2, 1);
    EXPECT_EQ(star.vertex_count(), 3u);
    EXPECT_EQ(edge_set(star), (std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {0, 2}}));
    for (std::size_t b : {2u, 3u, 4u})
        for (std::size_t depth : {1u, 2u, 4u}) {
            auto g = gen::tree_graph(b, depth);
            std::size_t expected = (static_cast<std::size_t>(std::pow(b, depth + 1)) - 1) / (b - 1);
            EXPECT_EQ(g.vertex_count(), expected);
            EXPECT_EQ(g.edge_count(), expected - 1);
        }
    EXPECT_THROW(gen::tree_graph(1, 3), parameter_error);
}

TEST(DlaTree, SmallExample)
{
    auto pc = gen::dla_tree(2, 3, 1);
    ASSERT_EQ(pc.size(), 6u);
    ASSERT_EQ(pc.dim(), 2u);
    const double expect[6][2] = {{0, 0}, {1, 0}, {2, 0}, {2, 0}, {2, 1}, {2, 2}};
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t k = 0; k < 2; ++k)
            EXPECT_EQ(pc(i, k), expect[i][k]);
}

TEST(DlaTree, StructureOfDefaultTree)
{
    gen::DlaOptions o;
    o.nodes_per_branch = 40;
    o.seed = 3;
    auto pc = gen::dla_tree(o);
    EXPECT_EQ(pc.dim(), 600u);
    EXPECT_EQ(pc.size(), 400u);
    for (std::size_t b = 0; b < 10; ++b) {
        const std::size_t first = b * 40;
        if (b > 0) {
            // The first point of a branch repeats a point of an earlier branch.
            bool found = false;
            for (std::size_t p = 0; p < first && !found; ++p)
                found = pc.distance(first, p) == 0.0;
            EXPECT_TRUE(found) << "branch " << b;
        }
        // Consecutive points differ only inside this branch's block.
        for (std::size_t t = first + 1; t < first + 40; ++t)
            for (std::size_t k = 0; k < 600; ++k) {
                bool own = k / 60 == b;
                if (own)
                    EXPECT_EQ(pc(t, k) - pc(t - 1, k), 1.0);
                else
                    EXPECT_EQ(pc(t, k), pc(t - 1, k));
            }
    }
    // Branches 2 and 3 start at the end of branch 1.
    EXPECT_EQ(pc.distance(40, 39), 0.0);
    EXPECT_EQ(pc.distance(80, 39), 0.0);
}

TEST(DlaTree, ReproducibleAndValidated)
{
    auto a = gen::dla_tree(5, 20, 3, 7);
    auto b = gen::dla_tree(5, 20, 3, 7);
    EXPECT_TRUE(std::equal(a.coords().begin(), a.coords().end(), b.coords().begin()));
    EXPECT_THROW(gen::dla_tree(1, 20, 3), parameter_error);
}

TEST(GaussianIsometric, DimensionsAndIsometry)
{
    auto pair = gen::gaussian_isometric(200, 2, 1);
    EXPECT_EQ(pair.high.dim(), 52u);
    EXPECT_EQ(pair.low.dim(), 2u);
    double worst = 0.0;
    for (std::size_t i = 0; i < 200; ++i)
        for (std::size_t j = i + 1; j < 200; ++j)
            worst = std::max(worst, std::abs(pair.low.distance(i, j) - pair.high.distance(i, j)));
    EXPECT_LE(worst, 1e-10);
    auto again = gen::gaussian_isometric(200, 2, 1);
    EXPECT_TRUE(std::equal(pair.high.coords().begin(), pair.high.coords().end(),
                           again.high.coords().begin()));
    EXPECT_THROW(gen::gaussian_isometric(2, 2, 0), parameter_error);
}
