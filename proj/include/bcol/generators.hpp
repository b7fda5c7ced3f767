#pragma once

#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "coloring.hpp"
#include "graph.hpp"
#include "primitives.hpp"

namespace bcol {

// Deterministic helpers (no std distributions, whose output is
// implementation-defined).
using Rng = std::mt19937_64;

inline int uniform_int(Rng& rng, int lo, int hi) {  // inclusive
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}
inline bool coin(Rng& rng, double p) { return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p; }

template <class T>
void shuffle_vec(std::vector<T>& v, Rng& rng) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) std::swap(v[i], v[uniform_int(rng, 0, i)]);
}

struct Instance {
    Graph g;
    std::optional<int> yes_k;                  // a k known to admit a b-coloring
    std::optional<PartialColoring> witness;    // planted witness when known
};

// Relabels vertices by a random permutation (witness follows along).
inline Instance relabel(const Instance& in, Rng& rng) {
    const int n = in.g.n();
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    shuffle_vec(p, rng);
    std::vector<Edge> es;
    for (auto [u, v] : in.g.edges()) es.emplace_back(p[u], p[v]);
    Instance out{Graph(n, es), in.yes_k, std::nullopt};
    if (in.witness) {
        PartialColoring w(n, in.witness->k());
        for (Vertex v = 0; v < n; ++v)
            if ((*in.witness)[v]) w.set(p[v], *(*in.witness)[v]);
        out.witness = w;
    }
    return out;
}

// u1..u4 = 0..3, v1..v4 = 4..7, edges u_i v_j for i != j.
inline Graph fixture_g_im() {
    std::vector<Edge> es;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) es.emplace_back(i, 4 + j);
    return Graph(8, es);
}

inline Graph random_graph(int n, double p, Rng& rng) {
    std::vector<Edge> es;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng, p)) es.emplace_back(u, v);
    return Graph(n, es);
}

inline Graph random_tree(int n, Rng& rng) {
    std::vector<int> label(n);
    std::iota(label.begin(), label.end(), 0);
    shuffle_vec(label, rng);
    std::vector<Edge> es;
    for (int i = 1; i < n; ++i) es.emplace_back(label[i], label[uniform_int(rng, 0, i - 1)]);
    return Graph(n, es);
}

// Random connected tree plus `extra` chords, so the feedback edge number is
// exactly min(extra, n(n-1)/2 - (n-1)).
inline Graph random_fen_graph(int n, int extra, Rng& rng) {
    Graph t = random_tree(n, rng);
    std::set<Edge> es;
    for (auto e : t.edges()) es.insert(e);
    const long long maxm = static_cast<long long>(n) * (n - 1) / 2;
    while (extra > 0 && static_cast<long long>(es.size()) < maxm) {
        int u = uniform_int(rng, 0, n - 1), v = uniform_int(rng, 0, n - 1);
        if (u == v) continue;
        if (es.insert({std::min(u, v), std::max(u, v)}).second) --extra;
    }
    return Graph(n, std::vector<Edge>(es.begin(), es.end()));
}

// Pivoted tree family: pivot u (vertex 0) joined to gate candidates c1, c2;
// the remaining k-2 candidates hang below the gates; every candidate is
// padded with leaves to degree k-1. `unpivot` adds one leaf to c1.
// For k = 4 this is the 11-vertex tree; for k = 18 it has 291 vertices.
inline Graph pivoted_tree(int k, bool unpivot = false) {
    if (k < 4) throw PreconditionViolated("pivoted-tree family needs k >= 4");
    std::vector<Edge> es;
    int n = 0;
    const int u = n++;
    const int c1 = n++, c2 = n++;
    es.emplace_back(u, c1);
    es.emplace_back(u, c2);
    const int outer = k - 2;
    const int under1 = (outer + 1) / 2;
    std::vector<int> deg_left{k - 2 - under1, k - 2 - (outer - under1)};
    std::vector<int> outs;
    for (int i = 0; i < outer; ++i) {
        int c = n++;
        es.emplace_back(i < under1 ? c1 : c2, c);
        outs.push_back(c);
    }
    auto pad = [&](int v, int leaves) {
        for (int i = 0; i < leaves; ++i) es.emplace_back(v, n++);
    };
    pad(c1, deg_left[0] + (unpivot ? 1 : 0));
    pad(c2, deg_left[1]);
    for (int c : outs) pad(c, k - 2);
    return Graph(n, es);
}

// Randomized members of the pivoted-tree family with m-degree k. Outer
// candidates are split unevenly between the gates, some attach to the pivot
// directly, outer candidates may carry extra leaves, and low-degree debris
// hangs off the pivot. When `unpivot` is set one of several pivot-breaking
// edits is applied.
inline Graph pivoted_tree_variant(int k, bool unpivot, Rng& rng) {
    if (k < 6) throw PreconditionViolated("pivoted-tree variants need k >= 6");
    std::vector<Edge> es;
    std::vector<int> deg{0};
    auto fresh = [&](int parent) {
        int v = static_cast<int>(deg.size());
        deg.push_back(1);
        ++deg[parent];
        es.emplace_back(parent, v);
        return v;
    };
    const int u = 0;
    const int c1 = fresh(u), c2 = fresh(u);
    // mode 0 / 2: extra leaf on a gate; mode 1: one candidate two steps from u
    const int mode = unpivot ? uniform_int(rng, 0, 2) : -1;
    const int outer = k - 2;
    const int direct = uniform_int(rng, mode == 1 ? 1 : 0, std::min(3, outer - 2));
    const int under1 = uniform_int(rng, 1, outer - direct - 1);
    const int under2 = outer - direct - under1;
    std::vector<int> outs;
    for (int i = 0; i < under1; ++i) outs.push_back(fresh(c1));
    for (int i = 0; i < under2; ++i) outs.push_back(fresh(c2));
    for (int i = 0; i < direct; ++i) outs.push_back(fresh(mode == 1 && i == 0 ? fresh(u) : u));
    auto pad_to = [&](int v, int target) {
        while (deg[v] < target) fresh(v);
    };
    pad_to(c1, k - 1 + (mode == 0 ? 1 : 0));
    pad_to(c2, k - 1 + (mode == 2 ? 1 : 0));
    for (int c : outs) pad_to(c, k - 1 + (coin(rng, 0.3) ? uniform_int(rng, 1, 2) : 0));
    // low-degree debris on the pivot, keeping it a non-candidate
    const int debris = uniform_int(rng, 0, std::max(0, std::min(3, k - 3 - deg[u])));
    for (int i = 0; i < debris; ++i) {
        int a = fresh(u);
        if (coin(rng, 0.5)) fresh(a);
    }
    return Graph(static_cast<int>(deg.size()), es);
}

// Complete multipartite graph on `parts` plus a planted modulator of size s
// whose vertices get random edges.
inline Graph random_cocluster_graph(const std::vector<int>& parts, int s, double p, Rng& rng) {
    std::vector<int> part_of;
    for (int i = 0; i < static_cast<int>(parts.size()); ++i)
        for (int j = 0; j < parts[i]; ++j) part_of.push_back(i);
    const int core = static_cast<int>(part_of.size());
    const int n = core + s;
    std::vector<Edge> es;
    for (int a = 0; a < core; ++a)
        for (int b = a + 1; b < core; ++b)
            if (part_of[a] != part_of[b]) es.emplace_back(a, b);
    for (int x = core; x < n; ++x)
        for (int y = 0; y < x; ++y)
            if (coin(rng, p)) es.emplace_back(y, x);
    return Graph(n, es);
}

// Planted k-b-coloring: k centers of distinct colors, each made to see all
// other colors through shared center-center edges or private leaves, plus
// `extra` random edges between differently colored vertices.
inline Instance planted_instance(int k, int extra, double center_density, Rng& rng) {
    std::vector<int> color;
    std::set<Edge> es;
    for (int i = 0; i < k; ++i) color.push_back(i + 1);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (coin(rng, center_density)) es.insert({i, j});
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            if (i == j || es.count({std::min(i, j), std::max(i, j)})) continue;
            int leaf = static_cast<int>(color.size());
            color.push_back(j + 1);
            es.insert({i, leaf});
        }
    const int n = static_cast<int>(color.size());
    int tries = 0;
    while (extra > 0 && tries++ < 100 * (extra + 1)) {
        int a = uniform_int(rng, 0, n - 1), b = uniform_int(rng, 0, n - 1);
        if (a == b || color[a] == color[b]) continue;
        if (es.insert({std::min(a, b), std::max(a, b)}).second) --extra;
    }
    Instance in{Graph(n, std::vector<Edge>(es.begin(), es.end())), k, PartialColoring(n, k)};
    for (Vertex v = 0; v < n; ++v) in.witness->set(v, color[v]);
    return relabel(in, rng);
}

}  // namespace bcol
