#pragma once

#include <string>
#include <vector>

#include "coloring.hpp"
#include "graph.hpp"

namespace bcol {

struct VerifyReport {
    bool total = false;
    bool proper = false;
    bool is_b_coloring = false;
    std::vector<std::vector<Vertex>> b_vertices;  // index c-1 lists b-vertices of color c
    std::vector<std::string> violations;          // 1-indexed vertices in messages
};

// Checks c against k colors. Never throws.
inline VerifyReport verify_b_coloring(const Graph& g, const PartialColoring& c, int k) {
    VerifyReport r;
    r.b_vertices.assign(k > 0 ? k : 0, {});
    if (c.n() != g.n()) {
        r.violations.push_back("coloring has " + std::to_string(c.n()) + " vertices, graph has " +
                               std::to_string(g.n()));
        return r;
    }
    r.total = true;
    r.proper = true;
    for (Vertex v = 0; v < g.n(); ++v) {
        if (!c[v]) {
            r.total = false;
            r.violations.push_back("vertex " + std::to_string(v + 1) + " uncolored");
        } else if (*c[v] < 1 || *c[v] > k) {
            r.proper = false;
            r.violations.push_back("vertex " + std::to_string(v + 1) + " has color " +
                                   std::to_string(*c[v]) + " outside [1," + std::to_string(k) + "]");
        }
    }
    for (auto [u, v] : g.edges())
        if (c[u] && c[v] && *c[u] == *c[v]) {
            r.proper = false;
            r.violations.push_back("edge " + std::to_string(u + 1) + "-" + std::to_string(v + 1) +
                                   " monochromatic");
        }
    std::vector<char> seen(k + 1);
    for (Vertex v = 0; v < g.n(); ++v) {
        if (!c[v] || *c[v] < 1 || *c[v] > k) continue;
        std::fill(seen.begin(), seen.end(), 0);
        int count = 0;
        auto mark = [&](Vertex x) {
            if (c[x] && *c[x] >= 1 && *c[x] <= k && !seen[*c[x]]) {
                seen[*c[x]] = 1;
                ++count;
            }
        };
        mark(v);
        for (Vertex w : g.neighbors(v)) mark(w);
        if (count == k) r.b_vertices[*c[v] - 1].push_back(v);
    }
    bool all = k >= 1;
    for (int col = 1; col <= k; ++col)
        if (r.b_vertices[col - 1].empty()) {
            all = false;
            r.violations.push_back("color " + std::to_string(col) + " has no b-vertex");
        }
    r.is_b_coloring = r.total && r.proper && all;
    return r;
}

}  // namespace bcol
