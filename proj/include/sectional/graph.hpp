#pragma once

#include "sectional/error.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace sectional {

struct Edge {
    std::size_t u;
    std::size_t v;
    double w = 1.0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected weighted graph stored as an edge list plus a lazily built
/// compressed adjacency. Weights are validated by the algorithms that use
/// them, not on insertion, so malformed input can be reported in context.
class Graph {
public:
    struct Neighbor {
        std::size_t vertex;
        double w;
    };

    Graph() = default;
    explicit Graph(std::size_t n) : n_(n) {}

    void add_edge(std::size_t u, std::size_t v, double w = 1.0)
    {
        if (u >= n_ || v >= n_)
            throw parameter_error("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                                  ") out of range for graph with " + std::to_string(n_) +
                                  " vertices");
        if (u == v)
            throw parameter_error("self-loop at vertex " + std::to_string(u));
        edges_.push_back({u, v, w});
        adjacency_built_ = false;
    }

    std::size_t vertex_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    std::span<const Edge> edges() const noexcept { return edges_; }

    bool unit_weights() const noexcept
    {
        for (const auto& e : edges_)
            if (e.w != 1.0)
                return false;
        return true;
    }

    std::span<const Neighbor> neighbors(std::size_t v) const
    {
        build_adjacency();
        return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
    }

    std::size_t degree(std::size_t v) const { return neighbors(v).size(); }

    /// Builds the adjacency eagerly; call before sharing the graph across threads.
    void freeze() const { build_adjacency(); }

private:
    void build_adjacency() const
    {
        if (adjacency_built_)
            return;
        offsets_.assign(n_ + 1, 0);
        for (const auto& e : edges_) {
            ++offsets_[e.u + 1];
            ++offsets_[e.v + 1];
        }
        for (std::size_t i = 0; i < n_; ++i)
            offsets_[i + 1] += offsets_[i];
        adjacency_.resize(2 * edges_.size());
        std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
        for (const auto& e : edges_) {
            adjacency_[fill[e.u]++] = {e.v, e.w};
            adjacency_[fill[e.v]++] = {e.u, e.w};
        }
        adjacency_built_ = true;
    }

    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    mutable bool adjacency_built_ = false;
    mutable std::vector<std::size_t> offsets_;
    mutable std::vector<Neighbor> adjacency_;
};

} // namespace sectional
