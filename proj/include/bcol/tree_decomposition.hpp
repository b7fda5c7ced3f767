#pragma once

#include <queue>
#include <string>
#include <vector>

#include "graph.hpp"
#include "primitives.hpp"

namespace bcol {

struct TreeDecomposition {
    std::vector<VertexSet> bags;            // sorted
    std::vector<std::vector<int>> tree;     // node adjacency
    int width() const {
        int w = -1;
        for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
        return w;
    }
};

// Bags {v, parent(v)} plus one fixed endpoint of every feedback edge, over a
// BFS spanning tree rooted at vertex 0. Width <= fen + 1.
inline TreeDecomposition td_from_feedback_edges(const Graph& g) {
    if (!is_connected(g)) throw DisconnectedInput("tree decomposition needs a connected graph");
    TreeDecomposition td;
    const int n = g.n();
    if (n == 0) return td;
    std::vector<Vertex> parent(n, -1);
    std::vector<bool> seen(n, false);
    std::queue<Vertex> q;
    q.push(0);
    seen[0] = true;
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
    VertexSet fixed;
    for (auto [u, v] : g.edges())
        if (parent[v] != u && parent[u] != v) fixed.push_back(u);
    std::sort(fixed.begin(), fixed.end());
    fixed.erase(std::unique(fixed.begin(), fixed.end()), fixed.end());
    td.bags.resize(n);
    td.tree.resize(n);
    for (Vertex v = 0; v < n; ++v) {
        VertexSet b = fixed;
        b.push_back(v);
        if (parent[v] >= 0) {
            b.push_back(parent[v]);
            td.tree[v].push_back(parent[v]);
            td.tree[parent[v]].push_back(v);
        }
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
        td.bags[v] = std::move(b);
    }
    return td;
}

// Decomposition from an elimination order (min-degree heuristic). Works on
// disconnected graphs; used as an independent second decomposition.
inline TreeDecomposition td_min_degree(const Graph& g) {
    const int n = g.n();
    TreeDecomposition td;
    if (n == 0) return td;
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (auto [u, v] : g.edges()) adj[u][v] = adj[v][u] = true;
    std::vector<bool> gone(n, false);
    std::vector<int> pos(n);
    std::vector<Vertex> order;
    for (int it = 0; it < n; ++it) {
        Vertex best = -1;
        int bd = 0;
        for (Vertex v = 0; v < n; ++v) {
            if (gone[v]) continue;
            int d = 0;
            for (Vertex w = 0; w < n; ++w) d += !gone[w] && adj[v][w];
            if (best < 0 || d < bd) best = v, bd = d;
        }
        VertexSet nb;
        for (Vertex w = 0; w < n; ++w)
            if (!gone[w] && adj[best][w]) nb.push_back(w);
        for (Vertex a : nb)
            for (Vertex b : nb)
                if (a != b) adj[a][b] = true;
        gone[best] = true;
        pos[best] = it;
        order.push_back(best);
        VertexSet bag = nb;
        bag.push_back(best);
        std::sort(bag.begin(), bag.end());
        td.bags.push_back(bag);
    }
    // Node i (eliminating order[i]) attaches to the node of its earliest-eliminated
    // remaining neighbour; roots of different components get chained.
    td.tree.resize(n);
    int last_root = -1;
    for (int i = 0; i < n; ++i) {
        int target = -1;
        for (Vertex w : td.bags[i])
            if (w != order[i] && (target < 0 || pos[w] < target)) target = pos[w];
        if (target < 0) {
            if (last_root >= 0) target = last_root;
            last_root = i;
            if (target < 0) continue;
        }
        td.tree[i].push_back(target);
        td.tree[target].push_back(i);
    }
    return td;
}

// Glues decompositions of the components into one tree.
inline TreeDecomposition td_for_graph(const Graph& g) {
    TreeDecomposition td;
    int prev_root = -1;
    for (const auto& comp : connected_components(g)) {
        Graph h = g.induced(comp);
        TreeDecomposition part = td_from_feedback_edges(h);
        int offset = static_cast<int>(td.bags.size());
        for (std::size_t i = 0; i < part.bags.size(); ++i) {
            VertexSet b;
            for (Vertex x : part.bags[i]) b.push_back(comp[x]);
            std::sort(b.begin(), b.end());
            td.bags.push_back(std::move(b));
            std::vector<int> nb;
            for (int t : part.tree[i]) nb.push_back(t + offset);
            td.tree.push_back(std::move(nb));
        }
        if (prev_root >= 0) {
            td.tree[prev_root].push_back(offset);
            td.tree[offset].push_back(prev_root);
        }
        prev_root = offset;
    }
    return td;
}

// Returns an empty string when td is a valid decomposition of g.
inline std::string validate_tree_decomposition(const Graph& g, const TreeDecomposition& td) {
    const int t = static_cast<int>(td.bags.size());
    if (static_cast<int>(td.tree.size()) != t) return "tree/bag size mismatch";
    if (g.n() == 0) return {};
    if (t == 0) return "no bags";
    std::size_t tedges = 0;
    for (int i = 0; i < t; ++i) {
        for (int j : td.tree[i]) {
            if (j < 0 || j >= t || j == i) return "bad tree edge";
            tedges += 1;
        }
        for (Vertex v : td.bags[i])
            if (v < 0 || v >= g.n()) return "bag vertex out of range";
    }
    std::vector<Edge> es;
    for (int i = 0; i < t; ++i)
        for (int j : td.tree[i])
            if (i < j) es.emplace_back(i, j);
    if (es.size() * 2 != tedges) return "asymmetric tree adjacency";
    Graph tree(t, es);
    if (!is_tree(tree)) return "decomposition is not a tree";
    for (Vertex v = 0; v < g.n(); ++v) {
        VertexSet nodes;
        for (int i = 0; i < t; ++i)
            if (contains(td.bags[i], v)) nodes.push_back(i);
        if (nodes.empty()) return "vertex " + std::to_string(v + 1) + " in no bag";
        if (!is_connected(tree.induced(nodes)))
            return "bags of vertex " + std::to_string(v + 1) + " are disconnected";
    }
    for (auto [u, v] : g.edges()) {
        bool ok = false;
        for (int i = 0; i < t && !ok; ++i) ok = contains(td.bags[i], u) && contains(td.bags[i], v);
        if (!ok) return "edge " + std::to_string(u + 1) + "-" + std::to_string(v + 1) + " uncovered";
    }
    return {};
}

}  // namespace bcol
