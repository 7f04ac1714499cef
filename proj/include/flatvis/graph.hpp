#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace flatvis {

using VertexId = std::size_t;

// Simple graph with dense ids 0..n-1. When directed, each edge pair is
// (tail, head) for upward mode; undirected edges keep their file order.
struct Graph {
    std::size_t n = 0;
    std::vector<std::pair<VertexId, VertexId>> edges;
    bool directed = false;

    std::size_t m() const { return edges.size(); }

    std::vector<std::vector<VertexId>> adjacency() const;

    bool connected() const;

    // Throws std::invalid_argument on self-loops, parallel edges,
    // out-of-range ids, or an empty vertex set.
    void validate() const;
};

} // namespace flatvis
