#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "graph.hpp"
#include "primitives.hpp"

namespace bcol {

// A small vertex set S carrying all the cycle structure: outside S the graph
// is a forest whose pieces meet S only through long paths.
struct FenCore {
    VertexSet S;
    VertexSet S_plus;  // S plus the lowest vertex of every S-free component
    int p = 0;         // |S|
    std::vector<VertexSet> outer_paths;  // long paths of G - (S ∪ dangling), in path order
    std::vector<int> dist_to_Splus;      // every vertex reaches S_plus
    std::vector<bool> in_S;
};

namespace detail {

// Orders the vertices of a path component (all internal degrees 2 within it).
inline VertexSet order_path(const Graph& g, const VertexSet& comp, const std::vector<int>& mark, int id) {
    auto inside_deg = [&](Vertex v) {
        int d = 0;
        for (Vertex w : g.neighbors(v)) d += mark[w] == id;
        return d;
    };
    Vertex start = comp.front();
    for (Vertex v : comp)
        if (inside_deg(v) <= 1) {
            start = v;
            break;
        }
    VertexSet out{start};
    Vertex prev = -1, cur = start;
    while (out.size() < comp.size()) {
        Vertex next = -1;
        for (Vertex w : g.neighbors(cur))
            if (mark[w] == id && w != prev) {
                next = w;
                break;
            }
        if (next < 0) break;
        prev = cur;
        cur = next;
        out.push_back(cur);
    }
    return out;
}

}  // namespace detail

// Dangling trees are peeled off; in every remaining component the
// feedback-edge endpoints and the branching vertices form S; residual paths
// of at most seven vertices are absorbed into S.
inline FenCore compute_fen_core(const Graph& g) {
    const int n = g.n();
    FenCore core;
    core.in_S.assign(n, false);
    auto tc = two_core(g);
    std::vector<bool> in_core(n, false);
    for (Vertex v : tc.core) in_core[v] = true;

    Graph h = g.induced(tc.core);  // vertex i of h is tc.core[i]
    for (auto [a, b] : feedback_edge_set(h)) {
        core.in_S[tc.core[a]] = true;
        core.in_S[tc.core[b]] = true;
    }
    for (int i = 0; i < h.n(); ++i)
        if (h.degree(i) > 2) core.in_S[tc.core[i]] = true;

    // residual pieces of the core outside S
    std::vector<int> mark(n, -1);
    int id = 0;
    for (Vertex s : tc.core) {
        if (core.in_S[s] || mark[s] >= 0) continue;
        VertexSet comp{s};
        mark[s] = id;
        for (std::size_t i = 0; i < comp.size(); ++i)
            for (Vertex w : g.neighbors(comp[i]))
                if (in_core[w] && !core.in_S[w] && mark[w] < 0) {
                    mark[w] = id;
                    comp.push_back(w);
                }
        std::sort(comp.begin(), comp.end());
        if (comp.size() <= 7) {
            for (Vertex v : comp) core.in_S[v] = true;
        } else {
            core.outer_paths.push_back(detail::order_path(g, comp, mark, id));
        }
        ++id;
    }
    for (Vertex v = 0; v < n; ++v)
        if (core.in_S[v]) core.S.push_back(v);
    core.p = static_cast<int>(core.S.size());

    core.S_plus = core.S;
    for (const auto& comp : connected_components(g)) {
        bool hit = std::any_of(comp.begin(), comp.end(), [&](Vertex v) { return core.in_S[v]; });
        if (!hit) core.S_plus.push_back(comp.front());
    }
    std::sort(core.S_plus.begin(), core.S_plus.end());
    auto d = bfs_distances(g, core.S_plus);
    core.dist_to_Splus.assign(n, 0);
    for (Vertex v = 0; v < n; ++v) core.dist_to_Splus[v] = d[v].value_or(n);
    return core;
}

// Number of paths from u to S whose vertices other than the last avoid S.
// Outside S the graph is a forest, so each S-edge leaving u's piece gives
// exactly one such path.
inline long long count_paths_to_S(const Graph& g, const std::vector<bool>& in_S, Vertex u) {
    if (in_S[u]) return 0;
    std::vector<bool> seen(g.n(), false);
    std::vector<Vertex> stack{u};
    seen[u] = true;
    long long total = 0;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (Vertex w : g.neighbors(v)) {
            if (in_S[w]) {
                ++total;
            } else if (!seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
        }
    }
    return total;
}

// Empty string when `core` satisfies every fen-core condition, otherwise a
// description of the first violation found.
inline std::string validate_fen_core(const Graph& g, const FenCore& core) {
    const int n = g.n();
    if (static_cast<int>(core.in_S.size()) != n) return "membership vector has wrong size";
    if (core.p != static_cast<int>(core.S.size())) return "p differs from |S|";
    for (Vertex v = 0; v < n; ++v)
        if (core.in_S[v] != contains(core.S, v)) return "membership vector disagrees with S";

    // every cycle has an edge inside S  <=>  G minus the S-internal edges is a forest
    std::vector<Edge> kept;
    for (auto [a, b] : g.edges())
        if (!(core.in_S[a] && core.in_S[b])) kept.emplace_back(a, b);
    if (feedback_edge_number(Graph(n, kept)) != 0) return "a cycle avoids the edges of G[S]";

    const int pg = feedback_edge_number(g);
    if (core.p > 32 * pg) return "|S| exceeds 32 times the feedback edge number";

    for (Vertex v = 0; v < n; ++v)
        if (!core.in_S[v] && count_paths_to_S(g, core.in_S, v) > 2)
            return "vertex " + std::to_string(v + 1) + " has more than two paths to S";

    // outer paths: walks through G - S between two N(S)-vertices whose inner
    // vertices avoid N(S); a vertex with two S-neighbours is one of length 0
    std::vector<int> s_nb(n, 0);
    for (Vertex v = 0; v < n; ++v)
        if (!core.in_S[v])
            for (Vertex w : g.neighbors(v)) s_nb[v] += core.in_S[w];
    for (Vertex x = 0; x < n; ++x) {
        if (core.in_S[x] || s_nb[x] == 0) continue;
        if (s_nb[x] >= 2) return "vertex " + std::to_string(x + 1) + " has two neighbours in S";
        std::vector<int> d(n, -1);
        std::vector<Vertex> q{x};
        d[x] = 0;
        for (std::size_t i = 0; i < q.size(); ++i) {
            Vertex v = q[i];
            if (v != x && s_nb[v] > 0) {
                if (d[v] < 7) return "outer path of length " + std::to_string(d[v]) + " ending at vertex " +
                                     std::to_string(v + 1);
                continue;  // endpoint: do not walk through it
            }
            for (Vertex w : g.neighbors(v))
                if (!core.in_S[w] && d[w] < 0) {
                    d[w] = d[v] + 1;
                    q.push_back(w);
                }
        }
    }

    // extension: one vertex per component, exactly in the S-free ones
    for (const auto& comp : connected_components(g)) {
        int inside = 0, in_s = 0;
        for (Vertex v : comp) {
            inside += contains(core.S_plus, v);
            in_s += core.in_S[v];
        }
        if (inside == 0) return "a component misses S_plus";
        if (in_s == 0 && inside != 1) return "S_plus is not minimal";
        if (in_s > 0 && inside != in_s) return "S_plus adds a vertex to a component meeting S";
    }
    return {};
}

}  // namespace bcol
