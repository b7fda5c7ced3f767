#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace bcol {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

// Immutable simple undirected graph; neighbor lists are sorted.
class Graph {
public:
    Graph() = default;

    explicit Graph(int n) : adj_(static_cast<std::size_t>(n)) {}

    // Edges must be simple; throws on self-loops or duplicates.
    Graph(int n, const std::vector<Edge>& edges) : adj_(static_cast<std::size_t>(n)) {
        for (auto [u, v] : edges) {
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw PreconditionViolated("edge endpoint out of range");
            if (u == v) throw SelfLoop("self-loop at vertex " + std::to_string(u + 1));
            adj_[u].push_back(v);
            adj_[v].push_back(u);
        }
        for (auto& list : adj_) {
            std::sort(list.begin(), list.end());
            if (std::adjacent_find(list.begin(), list.end()) != list.end())
                throw DuplicateEdge("duplicate edge");
        }
        m_ = edges.size();
    }

    int n() const { return static_cast<int>(adj_.size()); }
    std::size_t m() const { return m_; }

    std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
    int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }

    bool has_edge(Vertex u, Vertex v) const {
        const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
        Vertex x = adj_[u].size() <= adj_[v].size() ? v : u;
        return std::binary_search(a.begin(), a.end(), x);
    }

    // Edges as (u, v) with u < v, lexicographically ordered.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(m_);
        for (Vertex u = 0; u < n(); ++u)
            for (Vertex v : adj_[u])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    int max_degree() const {
        int d = 0;
        for (const auto& list : adj_) d = std::max(d, static_cast<int>(list.size()));
        return d;
    }

    // Subgraph induced by `keep` (in the given order); vertex i of the
    // result corresponds to keep[i].
    Graph induced(const std::vector<Vertex>& keep) const {
        std::vector<int> pos(adj_.size(), -1);
        for (std::size_t i = 0; i < keep.size(); ++i) pos[keep[i]] = static_cast<int>(i);
        std::vector<Edge> es;
        for (std::size_t i = 0; i < keep.size(); ++i)
            for (Vertex w : adj_[keep[i]])
                if (pos[w] > static_cast<int>(i)) es.emplace_back(static_cast<int>(i), pos[w]);
        return Graph(static_cast<int>(keep.size()), es);
    }

    friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

private:
    std::vector<std::vector<Vertex>> adj_;
    std::size_t m_ = 0;
};

}  // namespace bcol
