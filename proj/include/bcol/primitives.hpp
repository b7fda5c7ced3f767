#pragma once

#include <numeric>
#include <optional>
#include <queue>
#include <vector>

#include "graph.hpp"

namespace bcol {

using VertexSet = std::vector<Vertex>;  // kept sorted ascending
using Distance = std::optional<int>;    // nullopt = unreachable

// Components in ascending order of their smallest vertex; each sorted.
inline std::vector<VertexSet> connected_components(const Graph& g) {
    std::vector<int> comp(g.n(), -1);
    std::vector<VertexSet> out;
    for (Vertex s = 0; s < g.n(); ++s) {
        if (comp[s] >= 0) continue;
        VertexSet part{s};
        comp[s] = static_cast<int>(out.size());
        for (std::size_t i = 0; i < part.size(); ++i)
            for (Vertex w : g.neighbors(part[i]))
                if (comp[w] < 0) {
                    comp[w] = comp[s];
                    part.push_back(w);
                }
        std::sort(part.begin(), part.end());
        out.push_back(std::move(part));
    }
    return out;
}

inline bool is_connected(const Graph& g) { return connected_components(g).size() <= 1; }

// Cycle rank m - n + c witnesses: the non-tree edges of a BFS spanning forest.
inline std::vector<Edge> feedback_edge_set(const Graph& g) {
    std::vector<Vertex> parent(g.n(), -1);
    std::vector<bool> seen(g.n(), false);
    for (Vertex s = 0; s < g.n(); ++s) {
        if (seen[s]) continue;
        seen[s] = true;
        std::queue<Vertex> q;
        q.push(s);
        while (!q.empty()) {
            Vertex v = q.front();
            q.pop();
            for (Vertex w : g.neighbors(v))
                if (!seen[w]) {
                    seen[w] = true;
                    parent[w] = v;
                    q.push(w);
                }
        }
    }
    std::vector<Edge> f;
    for (auto [u, v] : g.edges())
        if (parent[v] != u && parent[u] != v) f.emplace_back(u, v);
    return f;
}

inline int feedback_edge_number(const Graph& g) {
    return static_cast<int>(g.m()) - g.n() + static_cast<int>(connected_components(g).size());
}

inline bool is_forest(const Graph& g) { return feedback_edge_number(g) == 0; }

inline bool is_tree(const Graph& g) { return g.n() >= 1 && is_forest(g) && is_connected(g); }

struct TwoCore {
    VertexSet core;
    VertexSet dangling;
};

// Peels vertices of degree <= 1 until none remain.
inline TwoCore two_core(const Graph& g) {
    std::vector<int> deg(g.n());
    std::vector<bool> removed(g.n(), false);
    std::vector<Vertex> stack;
    for (Vertex v = 0; v < g.n(); ++v) {
        deg[v] = g.degree(v);
        if (deg[v] <= 1) {
            removed[v] = true;
            stack.push_back(v);
        }
    }
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (Vertex w : g.neighbors(v))
            if (!removed[w] && --deg[w] <= 1) {
                removed[w] = true;
                stack.push_back(w);
            }
    }
    TwoCore r;
    for (Vertex v = 0; v < g.n(); ++v) (removed[v] ? r.dangling : r.core).push_back(v);
    return r;
}

inline std::vector<Distance> bfs_distances(const Graph& g, const VertexSet& sources) {
    std::vector<Distance> d(g.n());
    std::queue<Vertex> q;
    for (Vertex s : sources)
        if (!d[s]) {
            d[s] = 0;
            q.push(s);
        }
    while (!q.empty()) {
        Vertex v = q.front();
        q.pop();
        for (Vertex w : g.neighbors(v))
            if (!d[w]) {
                d[w] = *d[v] + 1;
                q.push(w);
            }
    }
    return d;
}

// Strict "<" on distances where unreachable is larger than everything.
inline bool dist_less(const Distance& a, const Distance& b) {
    if (!a) return false;
    if (!b) return true;
    return *a < *b;
}

inline Graph complement(const Graph& g) {
    std::vector<Edge> es;
    for (Vertex u = 0; u < g.n(); ++u)
        for (Vertex v = u + 1; v < g.n(); ++v)
            if (!g.has_edge(u, v)) es.emplace_back(u, v);
    return Graph(g.n(), es);
}

// Largest k such that at least k vertices have degree >= k - 1.
inline int m_degree(const Graph& g) {
    std::vector<int> deg(g.n());
    for (Vertex v = 0; v < g.n(); ++v) deg[v] = g.degree(v);
    std::sort(deg.rbegin(), deg.rend());
    int k = 0;
    while (k < g.n() && deg[k] >= k) ++k;  // deg[k] >= (k+1) - 1
    return k;
}

// Smallest-last ordering; returns vertices in elimination-reversed order so
// that each vertex has few neighbors earlier in the order.
inline std::vector<Vertex> degeneracy_order(const Graph& g) {
    const int n = g.n();
    std::vector<int> deg(n);
    std::vector<bool> gone(n, false);
    for (Vertex v = 0; v < n; ++v) deg[v] = g.degree(v);
    std::vector<Vertex> order;
    order.reserve(n);
    for (int it = 0; it < n; ++it) {
        Vertex best = -1;
        for (Vertex v = 0; v < n; ++v)
            if (!gone[v] && (best < 0 || deg[v] < deg[best])) best = v;
        gone[best] = true;
        order.push_back(best);
        for (Vertex w : g.neighbors(best))
            if (!gone[w]) --deg[w];
    }
    std::reverse(order.begin(), order.end());
    return order;
}

inline bool contains(const VertexSet& s, Vertex v) { return std::binary_search(s.begin(), s.end(), v); }

}  // namespace bcol
