#pragma once

// b-coloring for graphs of small feedback edge number. Small k is handed
// to the tree-decomposition DP; for large k every S-profile and valid color
// plan is tried: a color realization is built, its pivots eliminated, the
// neighborhoods of the b-vertices colored by matchings and the rest filled
// greedily. Every returned coloring is verified.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "coloring.hpp"
#include "errors.hpp"
#include "fen_core.hpp"
#include "fen_profile.hpp"
#include "matching.hpp"
#include "primitives.hpp"
#include "reference.hpp"
#include "twdp.hpp"
#include "verify.hpp"

namespace bcol {

struct FenStats {
    long long profiles = 0;
    long long failing_profiles = 0;
    long long plans = 0;
    long long realizations = 0;
    long long invariant_checks = 0;
    long long exhaustive_pivot_checks = 0;
    long long violations = 0;      // invariant checks that failed
    long long fallback_uses = 0;   // plans that needed the local search
    long long elimination_steps = 0;
    bool used_pipeline = false;
    std::vector<std::string> messages;
};

struct FenOptions {
    bool check_invariants = false;
    std::size_t twdp_budget = default_twdp_budget;
    int fallback_budget = 2000;
    FenStats* stats = nullptr;
};

inline int fen_threshold(int feedback_edges) { return 96 * feedback_edges + 18; }

namespace fen_detail {

struct Ctx {
    const SProfile& pr;
    const FenOptions& opt;
    FenStats& st;

    void check(bool ok, const std::string& what) {
        ++st.invariant_checks;
        if (!ok) {
            ++st.violations;
            if (st.messages.size() < 64) st.messages.push_back(what);
        }
    }
};

inline bool sees_color(const Graph& g, const ColorVec& col, Vertex v, int c, bool closed) {
    if (closed && col[v] == c) return true;
    for (Vertex w : g.neighbors(v))
        if (col[w] == c) return true;
    return false;
}

// Exhaustive (u, D) search over subsets of S_ρ; for cross-checking.
inline bool exhaustive_has_pivot(const SProfile& pr, const ColorRealization& re) {
    const Graph& g = pr.g();
    const int k = pr.k();
    const auto& Sr = re.S_rho;
    ColoringView psi(g, re.col, k);
    const std::size_t m = Sr.size();
    for (Vertex u = 0; u < g.n(); ++u) {
        if (re.in_S_rho[u]) continue;
        for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
            VertexSet D;
            for (std::size_t i = 0; i < m; ++i)
                if (mask >> i & 1) D.push_back(Sr[i]);
            if (static_cast<int>(D.size()) < k || !covers_colors(re.col, D, 1, k)) continue;
            if (is_psi_pivot(pr, psi, u, D)) return true;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Building the realization of a plan

inline ColorRealization build_realization(const SProfile& pr, const ColorPlan& plan) {
    const Graph& g = pr.g();
    const int k = pr.k(), b = pr.b(), p = pr.p();
    std::vector<Vertex> rho(k + 1, -1);
    std::vector<char> used(g.n(), 0);
    std::vector<char> in_U(g.n(), 0);
    for (Vertex v : pr.K()) in_U[v] = 1;

    std::optional<Vertex> v_c;
    if (plan.critical_color) {
        BCOL_ENSURE(plan.anchor.has_value(), "alg1.anchor");
        Vertex s = *plan.anchor;
        for (Vertex v : pr.K_star())
            if (contains(pr.linked_S(v), s)) {
                v_c = v;
                break;
            }
        BCOL_ENSURE(v_c.has_value(), "alg1.critical-vertex");
        auto w = pr.link(pr.chi(), s, *v_c);
        BCOL_ENSURE(w.has_value(), "alg1.critical-link");
        in_U[*w] = 0;
        rho[*plan.critical_color] = *v_c;
        used[*v_c] = 1;
    }

    // starred colors go to K* vertices not linked to their color class
    std::vector<int> stars;
    for (int c = b + 1; c <= p; ++c)
        if (plan.pi[c] == plan_star && c != plan.critical_color.value_or(-1)) stars.push_back(c);
    std::vector<Vertex> right;
    for (Vertex v : pr.K_star())
        if (!v_c || v != *v_c) right.push_back(v);
    std::vector<std::vector<int>> adj(stars.size());
    for (std::size_t i = 0; i < stars.size(); ++i)
        for (std::size_t j = 0; j < right.size(); ++j) {
            if (!in_U[right[j]]) continue;
            bool hit = false;
            for (Vertex s : pr.linked_S(right[j]))
                if (pr.chi()[s] == stars[i]) {
                    hit = true;
                    break;
                }
            if (!hit) adj[i].push_back(static_cast<int>(j));
        }
    auto mt = max_bipartite_matching(static_cast<int>(stars.size()), static_cast<int>(right.size()), adj);
    BCOL_ENSURE(mt.size == static_cast<int>(stars.size()), "alg1.star-matching");
    for (std::size_t i = 0; i < stars.size(); ++i) {
        Vertex v = right[mt.left_to_right[i]];
        rho[stars[i]] = v;
        used[v] = 1;
    }

    for (int c = b + 1; c <= p; ++c) {
        Vertex s = plan.pi[c];
        if (s == plan_star) continue;
        Vertex pick = -1;
        for (Vertex v : g.neighbors(s))
            if (in_U[v] && !used[v]) {
                pick = v;
                break;
            }
        BCOL_ENSURE(pick >= 0, "alg1.plan-neighbor");
        rho[c] = pick;
        used[pick] = 1;
    }

    std::vector<Vertex> rest;
    for (Vertex v : pr.K())
        if (in_U[v] && !used[v]) rest.push_back(v);
    std::sort(rest.begin(), rest.end(), [&](Vertex a, Vertex b2) {
        return std::make_pair(pr.dist(a), a) < std::make_pair(pr.dist(b2), b2);
    });
    BCOL_ENSURE(static_cast<int>(rest.size()) >= k - p, "alg1.enough-candidates");
    for (int c = p + 1; c <= k; ++c) rho[c] = rest[c - p - 1];
    return make_realization(pr, std::move(rho));
}

// ---------------------------------------------------------------------------
// Pivot elimination

inline ColorRealization with_rho(const SProfile& pr, std::vector<Vertex> rho) {
    return make_realization(pr, std::move(rho));
}

inline std::vector<Vertex> swapped(std::vector<Vertex> rho, int c, int d) {
    std::swap(rho[c], rho[d]);
    return rho;
}

// A color of [p+1, k] whose vertex is not S-influenced; may swap once to
// create one.
inline std::optional<int> first_swap(const SProfile& pr, std::vector<Vertex>& rho, Vertex u,
                                     const VertexSet& D, const ColorVec& col) {
    const Graph& g = pr.g();
    const int k = pr.k(), p = pr.p(), b = pr.b();
    for (int c = p + 1; c <= k; ++c)
        if (!pr.s_influenced(u, rho[c])) return c;
    // the link of the D-component carrying the S-influenced vertices
    std::optional<Vertex> v_C;
    for (Vertex w : D)
        if (g.has_edge(u, w) && pr.s_influenced(u, w)) {
            v_C = w;
            break;
        }
    if (!v_C) return std::nullopt;
    int c = -1;
    for (int x = b + 1; x <= k; ++x)
        if (!sees_color(g, col, *v_C, x, true)) {
            c = x;
            break;
        }
    if (c < 0) return std::nullopt;
    for (int d = p + 1; d <= k; ++d) {
        if (d == c || rho[d] == *v_C) continue;
        auto r = swapped(rho, c, d);
        if (!pr.s_influenced(u, r[d])) {
            rho = std::move(r);
            return d;
        }
    }
    return std::nullopt;
}

// One elimination step for the pivot `pv`; nullopt when no step applies.
inline std::optional<std::vector<Vertex>> elimination_step(const SProfile& pr, const ColorRealization& re,
                                                           const PivotWitness& pv) {
    const Graph& g = pr.g();
    const int k = pr.k(), b = pr.b(), p = pr.p();
    const Vertex u = pv.u;
    const auto& D = pv.D;
    std::vector<Vertex> rho = re.rho;

    // (i) the pivot relies on a link that is tight only because of ρ
    if (!is_psi_pivot(pr, pr.chi(), u, D)) {
        for (Vertex v : pv.links) {
            if (pr.chi().tight(v) && pr.in_K_plus(v)) continue;
            for (int c = b + 1; c <= p; ++c) {
                Vertex w = rho[c];
                if (!(w == v || g.has_edge(w, v))) continue;
                if (!sees_color(g, pr.chi().col(), v, c, true)) continue;
                for (int d = b + 1; d <= k; ++d) {
                    if (d == c || sees_color(g, re.col, v, d, true)) continue;
                    return swapped(rho, c, d);
                }
            }
        }
        return std::nullopt;
    }

    std::vector<char> pool(g.n(), 0);
    for (Vertex v = 0; v < g.n(); ++v) pool[v] = (pr.in_S(v) || pr.in_K(v)) && v != u;
    VertexSet Q;
    for (auto& X : maximal_pivoted_sets(pr, pr.chi(), u, pool))
        if (X.size() > Q.size()) Q = std::move(X);
    auto in = [](const VertexSet& s, Vertex v) { return contains(s, v); };
    bool K_in_Q = std::includes(Q.begin(), Q.end(), pr.K().begin(), pr.K().end());
    bool range_in_Q = std::includes(Q.begin(), Q.end(), re.range.begin(), re.range.end());

    if (!K_in_Q && !range_in_Q) {
        // (ii) move a color of range \ Q onto a vertex far from S
        auto d = first_swap(pr, rho, u, D, re.col);
        if (!d) return std::nullopt;
        for (int c = b + 1; c <= k; ++c)
            if (c != *d && rho[c] >= 0 && !in(Q, rho[c])) return swapped(rho, c, *d);
        return std::nullopt;
    }
    if (!K_in_Q) {
        // (iii) shift a color onto a vertex of K \ Q
        Vertex v = -1;
        for (Vertex x : pr.K())
            if (!in(Q, x) && !re.in_range[x] && (v < 0 || x != u)) {
                v = x;
                if (x != u) break;
            }
        if (v < 0) return std::nullopt;
        for (int c = k; c > p; --c)
            if (!g.has_edge(rho[c], u) && !sees_color(g, re.col, v, c, false)) {
                rho[c] = v;
                return rho;
            }
        for (int c = k; c > p; --c)
            if (!sees_color(g, re.col, v, c, false)) {
                rho[c] = v;
                return rho;
            }
        return std::nullopt;
    }
    // (iv) K ⊆ Q: trade a link color for a candidate outside the range
    auto c = first_swap(pr, rho, u, D, re.col);
    if (!c) return std::nullopt;
    for (Vertex w : pr.K())
        if (!re.in_range[w] && w != u && !in(D, w)) {
            rho[*c] = w;
            return rho;
        }
    for (Vertex w : pr.K())
        if (!re.in_range[w] && w != u) {
            rho[*c] = w;
            return rho;
        }
    return std::nullopt;
}

// Health score; 0 means damage-free, plan-valid, pivot-free, almost 11-safe.
inline int health(const SProfile& pr, ColorRealization& re, bool full = true) {
    int score = 0;
    re.damage_free = !find_damaged(pr, re).has_value();
    re.realizes_valid_plan = evaluate_plan(pr, realized_plan(pr, re)).valid;
    score += !re.damage_free;
    score += !re.realizes_valid_plan;
    auto s = realization_safety(pr, re);
    re.safety_level = s.level;
    re.almost_safety_level = s.almost_level;
    re.almost_safe_witness = s.witness;
    score += std::max(0, s.almost_level - 11);
    if (full || score == 0) {
        re.pivot_free = !find_pivot(pr, re).has_value();
        score += !re.pivot_free;
    }
    return score;
}

// Removes blocks by trading the blocking color with a color on N(u).
inline std::optional<ColorRealization> repair_blocks(const SProfile& pr, ColorRealization re) {
    const Graph& g = pr.g();
    for (int round = 0; round < 2 * pr.k() + 2; ++round) {
        auto blk = block_check(pr, re);
        if (!blk) {
            re.block_free = true;
            return re;
        }
        auto [u, c] = *blk;
        if (c <= pr.b()) return std::nullopt;
        int d = -1;
        for (int x = pr.p() + 1; x <= pr.k(); ++x)
            if (x != c && g.has_edge(re.rho[x], u)) {
                d = x;
                break;
            }
        if (d < 0) return std::nullopt;
        re = with_rho(pr, swapped(re.rho, c, d));
        if (health(pr, re) != 0) return std::nullopt;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Coloring the neighborhoods of B_ρ

inline ColorVec partial_b_coloring(const SProfile& pr, const ColorRealization& re) {
    const Graph& g = pr.g();
    const int k = pr.k(), p = pr.p(), n = g.n();
    ColorVec psi = re.col;
    const ColoringView base(g, re.col, k);

    auto resolve = [&](Vertex u) {
        std::vector<Vertex> U;
        for (Vertex v : g.neighbors(u))
            if (psi[v] == 0) U.push_back(v);
        std::vector<char> missing(k + 1, 1);
        missing[0] = 0;
        missing[psi[u]] = 0;
        for (Vertex v : g.neighbors(u)) missing[psi[v]] = 0;
        std::vector<int> C;
        for (int c = 1; c <= k; ++c)
            if (missing[c]) C.push_back(c);
        // forbidden colors of v: its neighbors and vertices linked to it through B_ρ
        std::vector<std::vector<char>> allowed(U.size(), std::vector<char>(k + 1, 1));
        for (std::size_t i = 0; i < U.size(); ++i) {
            Vertex v = U[i];
            auto& al = allowed[i];
            al[0] = 0;
            for (Vertex w : g.neighbors(v)) {
                al[psi[w]] = 0;
                if (re.in_B_rho[w] && pr.in_K_plus(w) && base.tight(w))
                    for (Vertex y : g.neighbors(w))
                        if (y != v) al[psi[y]] = 0;
            }
            al[0] = 0;
        }
        std::vector<std::vector<int>> adj(U.size());
        for (std::size_t i = 0; i < U.size(); ++i)
            for (std::size_t j = 0; j < C.size(); ++j)
                if (allowed[i][C[j]]) adj[i].push_back(static_cast<int>(j));
        auto mt = max_bipartite_matching(static_cast<int>(U.size()), static_cast<int>(C.size()), adj);
        BCOL_ENSURE(mt.size == static_cast<int>(C.size()), "alg2.cover-missing-colors");
        for (std::size_t i = 0; i < U.size(); ++i)
            if (mt.left_to_right[i] >= 0) psi[U[i]] = C[mt.left_to_right[i]];
        for (std::size_t i = 0; i < U.size(); ++i) {
            if (psi[U[i]] != 0) continue;
            Vertex v = U[i];
            int pick = 0;
            for (int c = 1; c <= k && !pick; ++c)
                if (allowed[i][c] && !sees_color(g, psi, v, c, false)) pick = c;
            for (int c = 1; c <= k && !pick; ++c)
                if (!sees_color(g, psi, v, c, false)) pick = c;
            BCOL_ENSURE(pick > 0, "alg2.free-color");
            psi[v] = pick;
        }
    };

    std::vector<char> done(n, 0);
    // an exceptional vertex is resolved first
    std::optional<Vertex> first;
    for (Vertex u : re.B_rho) {
        int cnt = 0;
        for (Vertex w : g.neighbors(u)) cnt += re.in_B_rho[w];
        if (cnt >= k - p - 8) {
            first = u;
            break;
        }
    }
    if (!first)
        for (Vertex v = 0; v < n && !first; ++v) {
            if (re.in_S_rho[v]) continue;
            std::set<Vertex> L;
            for (Vertex x : g.neighbors(v))
                if (re.in_S_rho[x]) L.insert(x);
            for (Vertex y : g.neighbors(v))
                if (re.in_B_rho[y])
                    for (Vertex x : g.neighbors(y))
                        if (re.in_S_rho[x]) L.insert(x);
            if (static_cast<int>(L.size()) >= k - 3)
                for (Vertex y : g.neighbors(v))
                    if (re.in_B_rho[y]) {
                        first = y;
                        break;
                    }
        }
    if (first) {
        resolve(*first);
        done[*first] = 1;
    }
    VertexSet order = re.B_rho;
    std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b2) {
        return std::make_pair(pr.dist(a), a) < std::make_pair(pr.dist(b2), b2);
    });
    for (Vertex u : order)
        if (!done[u]) resolve(u);

    for (auto [a, b2] : g.edges()) BCOL_ENSURE(psi[a] == 0 || psi[a] != psi[b2], "alg2.proper");
    for (Vertex v = 0; v < n; ++v) {
        bool want = re.in_S_rho[v];
        for (Vertex w : g.neighbors(v)) want = want || re.in_B_rho[w];
        BCOL_ENSURE(want == (psi[v] != 0), "alg2.domain");
    }
    for (Vertex u : re.B_rho) {
        std::vector<char> seen(k + 1, 0);
        seen[psi[u]] = 1;
        for (Vertex w : g.neighbors(u)) seen[psi[w]] = 1;
        BCOL_ENSURE(std::count(seen.begin() + 1, seen.end(), 1) == k, "alg2.b-vertex");
    }
    return psi;
}

inline PartialColoring finish_coloring(const SProfile& pr, const ColorRealization& re, ColorVec psi) {
    const Graph& g = pr.g();
    const int k = pr.k();
    auto fill = [&](Vertex v) {
        if (psi[v] != 0) return;
        for (int c = 1; c <= k; ++c)
            if (!sees_color(g, psi, v, c, false)) {
                psi[v] = c;
                return;
            }
        BCOL_ENSURE(false, "finish.free-color");
    };
    if (re.almost_safe_witness) fill(*re.almost_safe_witness);
    std::vector<Vertex> order(g.n());
    for (Vertex v = 0; v < g.n(); ++v) order[v] = v;
    std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b2) {
        return std::make_pair(pr.dist(a), a) < std::make_pair(pr.dist(b2), b2);
    });
    for (Vertex v : order) fill(v);
    PartialColoring out(g.n(), k);
    for (Vertex v = 0; v < g.n(); ++v) out.set(v, psi[v]);
    BCOL_ENSURE(verify_b_coloring(g, out, k).is_b_coloring, "finish.verified");
    return out;
}

// Block repair + coloring for a healthy realization.
inline std::optional<PartialColoring> complete(Ctx& cx, ColorRealization re) {
    const SProfile& pr = cx.pr;
    auto fixed = repair_blocks(pr, std::move(re));
    if (!fixed || !fixed->feasible(13)) return std::nullopt;
    if (cx.opt.check_invariants) {
        ColoringView psi(pr.g(), fixed->col, pr.k());
        bool candidates = true;
        for (Vertex u : fixed->B_rho) candidates = candidates && psi.candidate(u);
        cx.check(candidates, "a vertex of B_rho is not a candidate after elimination");
        cx.check(!find_damaged(pr, *fixed) && !find_pivot(pr, *fixed) && !block_check(pr, *fixed),
                 "feasibility flags disagree with a recheck");
        if (fixed->S_rho.size() <= 12) {
            ++cx.st.exhaustive_pivot_checks;
            cx.check(!exhaustive_has_pivot(pr, *fixed), "exhaustive search finds a pivot in a feasible realization");
        }
    }
    ColorVec psi;
    try {
        psi = partial_b_coloring(pr, *fixed);
    } catch (const InternalInvariantViolation& e) {
        cx.check(false, e.what());  // Algorithm 2 must succeed on feasible input
        return std::nullopt;
    }
    if (cx.opt.check_invariants) ++cx.st.invariant_checks;  // postconditions asserted inside
    return finish_coloring(pr, *fixed, std::move(psi));
}

// Bounded best-first search over color swaps and shifts.
inline std::optional<PartialColoring> local_search(Ctx& cx, const ColorRealization& start) {
    const SProfile& pr = cx.pr;
    const int k = pr.k(), b = pr.b(), p = pr.p();
    ++cx.st.fallback_uses;
    std::set<std::vector<Vertex>> seen{start.rho};
    std::multimap<int, std::vector<Vertex>> frontier{{0, start.rho}};
    int evals = 0;
    while (!frontier.empty() && evals < cx.opt.fallback_budget) {
        auto rho = frontier.begin()->second;
        frontier.erase(frontier.begin());
        std::vector<std::vector<Vertex>> moves;
        for (int c = b + 1; c <= k; ++c)
            for (int d = std::max(c + 1, p + 1); d <= k; ++d) moves.push_back(swapped(rho, c, d));
        std::vector<char> in_range(pr.g().n(), 0);
        for (int c = b + 1; c <= k; ++c) in_range[rho[c]] = 1;
        for (int c = p + 1; c <= k; ++c)
            for (Vertex v : pr.K())
                if (!in_range[v]) {
                    auto r = rho;
                    r[c] = v;
                    moves.push_back(std::move(r));
                }
        for (auto& r : moves) {
            if (evals >= cx.opt.fallback_budget) break;
            if (!seen.insert(r).second) continue;
            ++evals;
            auto re = with_rho(pr, r);
            int score = health(pr, re, false);
            if (score == 0) {
                re.block_free = !block_check(pr, re).has_value();
                if (auto col = complete(cx, re)) return col;
            }
            frontier.emplace(score, std::move(r));
        }
    }
    return std::nullopt;
}

inline std::optional<PartialColoring> solve_plan(Ctx& cx, const ColorPlan& plan) {
    const SProfile& pr = cx.pr;
    ++cx.st.realizations;
    ColorRealization re = build_realization(pr, plan);
    health(pr, re);
    if (cx.opt.check_invariants) {
        auto pi = realized_plan(pr, re);
        bool same = true;
        for (int c = pr.b() + 1; c <= pr.p(); ++c)
            if (c != plan.critical_color.value_or(-1) && pi[c] != plan.pi[c]) same = false;
        cx.check(same, "built realization does not realize its plan");
        cx.check(re.damage_free, "built realization is damaged");
        if (plan.critical_color)
            cx.check(re.almost_safety_level == 0, "built realization of a critical plan is not almost 0-safe");
        else
            cx.check(re.safety_level == 0, "built realization is not 0-safe");
    }
    for (int round = 0; round < 8 && !re.pivot_free; ++round) {
        auto pv = find_pivot(pr, re);
        if (!pv) break;
        if (cx.opt.check_invariants && re.S_rho.size() <= 12) {
            ++cx.st.exhaustive_pivot_checks;
            cx.check(exhaustive_has_pivot(pr, re), "pivot finder reports a pivot the exhaustive search misses");
        }
        std::optional<std::vector<Vertex>> next;
        try {
            next = elimination_step(pr, re, *pv);
        } catch (const PreconditionViolated&) {
            next.reset();
        }
        if (!next) break;
        ++cx.st.elimination_steps;
        try {
            re = with_rho(pr, std::move(*next));
        } catch (const PreconditionViolated&) {
            break;
        }
        health(pr, re);
    }
    if (cx.opt.check_invariants && re.pivot_free && re.S_rho.size() <= 12) {
        ++cx.st.exhaustive_pivot_checks;
        cx.check(!exhaustive_has_pivot(pr, re), "pivot finder misses a pivot");
    }
    if (health(pr, re) == 0) {
        re.block_free = !block_check(pr, re).has_value();
        if (auto col = complete(cx, re)) return col;
    }
    return local_search(cx, re);
}

}  // namespace fen_detail

// The profile/plan pipeline; only defined for k >= 96 fen(G) + 18. nullopt
// means every profile fails.
inline std::optional<PartialColoring> fen_pipeline(const Graph& g, int k, const FenOptions& opt = {}) {
    if (k < fen_threshold(feedback_edge_number(g)))
        throw PreconditionViolated("the profile pipeline needs k >= 96 fen(G) + 18");
    FenStats local;
    FenStats& st = opt.stats ? *opt.stats : local;
    st.used_pipeline = true;
    const FenCore core = compute_fen_core(g);
    std::optional<PartialColoring> result;
    std::optional<InternalInvariantViolation> failure;
    long long tried = 0;
    for_each_s_profile(g, core, k, [&](const SProfile& pr) {
        ++st.profiles;
        if (static_cast<int>(pr.K_plus().size()) < k || find_pivot_failing(pr)) {
            ++st.failing_profiles;
            return true;
        }
        fen_detail::Ctx cx{pr, opt, st};
        for_each_color_plan(pr, [&](const ColorPlan& plan) {
            ++st.plans;
            ++tried;
            try {
                result = fen_detail::solve_plan(cx, plan);
            } catch (const InternalInvariantViolation& e) {
                ++st.violations;
                if (st.messages.size() < 64) st.messages.push_back(e.what());
                if (!failure) failure = e;
            }
            return !result.has_value();
        });
        return !result.has_value();
    });
    if (result) return result;
    // a non-failing profile always leads to a coloring, so a NO here would be unsound
    if (tried > 0)
        throw InternalInvariantViolation("fen.no-plan-completed",
                                         failure ? failure->what() : "a non-failing profile was left uncolored");
    return std::nullopt;
}

inline std::optional<PartialColoring> solve_fen(const Graph& g, int k, const FenOptions& opt = {}) {
    if (k < 1 || k > g.n() || k > m_degree(g)) return std::nullopt;
    const int fen = feedback_edge_number(g);
    if (k >= fen_threshold(fen)) return fen_pipeline(g, k, opt);
    try {
        return solve_twdp(g, k, opt.twdp_budget);
    } catch (const StateBudgetExceeded&) {
        if (g.n() <= default_brute_cap) return brute_force_b_coloring(g, k);
        throw InstanceTooLarge("k = " + std::to_string(k) + " is below the profile threshold " +
                               std::to_string(fen_threshold(fen)) + " and the decomposition DP ran out of budget");
    }
}

}  // namespace bcol
