#pragma once

#include <optional>
#include <vector>

#include "coloring.hpp"
#include "graph.hpp"
#include "primitives.hpp"
#include "verify.hpp"

namespace bcol {

inline constexpr int default_brute_cap = 16;

namespace detail {

// Backtracking search for a k-b-coloring. Colors are introduced in order
// (color c+1 only after c), and a branch dies once some color has no vertex
// left that could still become its b-vertex.
class BruteSearch {
public:
    BruteSearch(const Graph& g, int k)
        : g_(g), k_(k), n_(g.n()), order_(degeneracy_order(g)), color_(n_, 0),
          cnt_(n_, std::vector<int>(k + 1, 0)), distinct_(n_, 0), uncol_(n_) {
        for (Vertex v = 0; v < n_; ++v) uncol_[v] = g.degree(v);
    }

    std::optional<PartialColoring> run() {
        if (!rec(0, 0)) return std::nullopt;
        PartialColoring c(n_, k_);
        for (Vertex v = 0; v < n_; ++v) c.set(v, color_[v]);
        return c;
    }

private:
    void assign(Vertex v, int c) {
        color_[v] = c;
        for (Vertex w : g_.neighbors(v)) {
            if (cnt_[w][c]++ == 0) ++distinct_[w];
            --uncol_[w];
        }
    }
    void unassign(Vertex v) {
        int c = color_[v];
        color_[v] = 0;
        for (Vertex w : g_.neighbors(v)) {
            if (--cnt_[w][c] == 0) --distinct_[w];
            ++uncol_[w];
        }
    }

    // Every color still has a vertex that could end up as its b-vertex.
    bool alive() const {
        for (int c = 1; c <= k_; ++c) {
            bool ok = false;
            for (Vertex v = 0; v < n_ && !ok; ++v) {
                if (distinct_[v] + uncol_[v] < k_ - 1) continue;
                if (color_[v] == c) ok = true;
                else if (color_[v] == 0 && cnt_[v][c] == 0) ok = true;
            }
            if (!ok) return false;
        }
        return true;
    }

    bool rec(int i, int used) {
        if (k_ - used > n_ - i) return false;
        if (i == n_) return used == k_ && verify_b_coloring(g_, snapshot(), k_).is_b_coloring;
        Vertex v = order_[i];
        int top = std::min(used + 1, k_);
        for (int c = 1; c <= top; ++c) {
            if (cnt_[v][c]) continue;
            assign(v, c);
            if (alive() && rec(i + 1, std::max(used, c))) return true;
            unassign(v);
        }
        return false;
    }

    PartialColoring snapshot() const {
        PartialColoring c(n_, k_);
        for (Vertex v = 0; v < n_; ++v)
            if (color_[v]) c.set(v, color_[v]);
        return c;
    }

    const Graph& g_;
    int k_, n_;
    std::vector<Vertex> order_;
    std::vector<int> color_;  // 0 while unassigned
    std::vector<std::vector<int>> cnt_;
    std::vector<int> distinct_, uncol_;
};

}  // namespace detail

// Exhaustive exact search; returns a verified k-b-coloring or nullopt.
inline std::optional<PartialColoring> brute_force_b_coloring(const Graph& g, int k,
                                                              int cap = default_brute_cap) {
    if (g.n() > cap)
        throw InstanceTooLarge("brute force limited to n <= " + std::to_string(cap) + ", got n = " +
                               std::to_string(g.n()));
    if (k < 1 || k > g.n() || k > m_degree(g)) return std::nullopt;
    auto c = detail::BruteSearch(g, k).run();
    if (c) BCOL_ENSURE(verify_b_coloring(g, *c, k).is_b_coloring, "brute.witness");
    return c;
}

inline int b_chromatic_brute(const Graph& g, int cap = default_brute_cap) {
    if (g.n() > cap)
        throw InstanceTooLarge("brute force limited to n <= " + std::to_string(cap));
    for (int k = m_degree(g); k >= 1; --k)
        if (brute_force_b_coloring(g, k, cap)) return k;
    return 0;
}

// Repeatedly removes a color none of whose vertices is a b-vertex, moving
// each such vertex to the smallest color missing around it. The result is
// renumbered to [1, k'] preserving color order.
inline PartialColoring heuristic_descent(const Graph& g, const PartialColoring& start) {
    if (!start.total() || !start.proper(g))
        throw ImproperColoring("heuristic start must be a total proper coloring");
    const int n = g.n();
    const int K = start.k();
    std::vector<int> col(n);
    std::vector<bool> present(K + 1, false);
    for (Vertex v = 0; v < n; ++v) {
        col[v] = *start[v];
        present[col[v]] = true;
    }
    std::vector<char> seen(K + 1);
    auto seen_around = [&](Vertex v) {
        std::fill(seen.begin(), seen.end(), 0);
        seen[col[v]] = 1;
        for (Vertex w : g.neighbors(v)) seen[col[w]] = 1;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (int c = 1; c <= K && !changed; ++c) {
            if (!present[c]) continue;
            std::vector<std::pair<Vertex, int>> moves;
            bool removable = true;
            for (Vertex v = 0; v < n && removable; ++v) {
                if (col[v] != c) continue;
                seen_around(v);
                int repl = 0;
                for (int d = 1; d <= K; ++d)
                    if (present[d] && d != c && !seen[d]) {
                        repl = d;
                        break;
                    }
                if (repl == 0) removable = false;
                else moves.emplace_back(v, repl);
            }
            if (!removable) continue;
            // Vertices of one class are pairwise non-adjacent, so the moves commute.
            for (auto [v, d] : moves) col[v] = d;
            present[c] = false;
            changed = true;
        }
    }
    std::vector<int> rename(K + 1, 0);
    int k2 = 0;
    for (int c = 1; c <= K; ++c)
        if (present[c]) rename[c] = ++k2;
    PartialColoring out(n, k2);
    for (Vertex v = 0; v < n; ++v) out.set(v, rename[col[v]]);
    return out;
}

struct PivotReport {
    bool pivoted = false;
    std::optional<Vertex> pivot;
    std::vector<Vertex> candidates;
    int m_degree = 0;
};

// Candidates are the vertices of degree >= k-1 for k = m_degree.
inline PivotReport pivoted_tree_report(const Graph& t) {
    if (!is_tree(t)) throw NotATree("input is not a tree");
    PivotReport r;
    const int k = r.m_degree = m_degree(t);
    std::vector<bool> cand(t.n(), false);
    for (Vertex v = 0; v < t.n(); ++v)
        if (t.degree(v) >= k - 1) {
            cand[v] = true;
            r.candidates.push_back(v);
        }
    if (static_cast<int>(r.candidates.size()) != k) return r;
    for (Vertex u = 0; u < t.n(); ++u) {
        if (cand[u]) continue;
        bool ok = true;
        for (Vertex c : r.candidates) {
            bool adj_u = t.has_edge(u, c);
            bool adj_cand = false, via = false;
            for (Vertex w : t.neighbors(c))
                if (cand[w]) {
                    adj_cand = true;
                    if (t.has_edge(w, u)) via = true;
                }
            if (!adj_u && !via) ok = false;
            if (adj_u && adj_cand && t.degree(c) != k - 1) ok = false;
            if (!ok) break;
        }
        if (ok) {
            r.pivoted = true;
            r.pivot = u;
            return r;
        }
    }
    return r;
}

inline int b_chromatic_tree(const Graph& t) {
    auto r = pivoted_tree_report(t);
    return r.m_degree - (r.pivoted ? 1 : 0);
}

}  // namespace bcol
