// Prints the averaged curvature profiles of the three reference spaces:
// a balanced tree, a circle, and a sample of the plane.

#include <sectional/sectional.hpp>

#include <cstdio>

namespace {

void print(const char* name, const sectional::CurvatureProfile& p)
{
    std::printf("%s (%zu scales, %zu triangles)\n", name, p.records.size(), p.triangle_count());
    for (const auto& rec : p.records)
        std::printf("  r=%-10.4g count=%-5zu mean_rho=%.4f\n", rec.r, rec.count, rec.mean_rho);
}

} // namespace

int main()
{
    using namespace sectional;

    auto tree = shortest_path_matrix(gen::tree_graph(2, 6));
    print("binary tree, depth 6", build_profile(tree, {.m = 1.0, .seed = 1}));

    auto circle = gen::circle_sample(300, 2);
    print("circle, 300 samples", build_profile(circle, {.m = 0.2, .seed = 2}));

    auto plane = gen::plane_sample(1000, 3);
    auto graph = adaptive_graph(plane, 15, 20);
    print("unit square, 1000 samples", build_profile(shortest_path_matrix(graph.graph), {.m = 0.1, .seed = 3}));

    std::printf("reference lines: tree %.4f, euclidean %.4f, circle %.4f\n", reference_rho::tree,
                reference_rho::euclidean, reference_rho::circle);
}
