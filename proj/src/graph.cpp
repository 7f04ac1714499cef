#include "flatvis/graph.hpp"

#include <set>

namespace flatvis {

std::vector<std::vector<VertexId>> Graph::adjacency() const {
    std::vector<std::vector<VertexId>> adj(n);
    for (auto &[u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    return adj;
}

bool Graph::connected() const {
    if (n == 0) return false;
    auto adj = adjacency();
    std::vector<char> seen(n, 0);
    std::vector<VertexId> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        for (VertexId w : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
    }
    return count == n;
}

void Graph::validate() const {
    if (n == 0) throw std::invalid_argument("empty graph");
    std::set<std::pair<VertexId, VertexId>> seen;
    for (auto &[u, v] : edges) {
        if (u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
        if (u == v) throw std::invalid_argument("self-loop");
        auto key = std::minmax(u, v);
        if (!seen.insert({key.first, key.second}).second)
            throw std::invalid_argument("parallel edge");
    }
}

} // namespace flatvis
