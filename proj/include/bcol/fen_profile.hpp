#pragma once

// S-profiles, color plans and color realizations for the feedback-edge
// solver, together with the predicates defined on them (links, pivots,
// damage, safety, blocking). Everything here is a pure function of its
// arguments so that the solver and the tests share one set of definitions.

#include <algorithm>
#include <climits>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "fen_core.hpp"
#include "graph.hpp"
#include "matching.hpp"
#include "primitives.hpp"

namespace bcol {

using ColorVec = std::vector<int>;  // per-vertex color, 0 = uncolored

// |uncolored vertices of N[v]| + |colors on N[v]| - k
inline int redundancy(const Graph& g, const ColorVec& col, int k, Vertex v) {
    int uncolored = 0;
    std::vector<int> seen;
    seen.reserve(g.degree(v) + 1);
    auto take = [&](Vertex x) {
        if (col[x] == 0) ++uncolored;
        else seen.push_back(col[x]);
    };
    take(v);
    for (Vertex x : g.neighbors(v)) take(x);
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    return uncolored + static_cast<int>(seen.size()) - k;
}

// A partial coloring with memoized redundancies.
class ColoringView {
public:
    ColoringView(const Graph& g, ColorVec col, int k)
        : g_(&g), col_(std::move(col)), k_(k), red_(col_.size(), INT_MIN) {}

    const ColorVec& col() const { return col_; }
    int operator[](Vertex v) const { return col_[v]; }
    int red(Vertex v) const {
        if (red_[v] == INT_MIN) red_[v] = redundancy(*g_, col_, k_, v);
        return red_[v];
    }
    bool tight(Vertex v) const { return red(v) == 0; }
    bool candidate(Vertex v) const { return red(v) >= 0; }

private:
    const Graph* g_;
    ColorVec col_;
    int k_;
    mutable std::vector<int> red_;
};

// ---------------------------------------------------------------------------
// S-profile

class SProfile {
public:
    // `chi` colors exactly the vertices of S with colors in [p]; `B` lists
    // χ-candidates of S whose colors are exactly 1..|B|.
    SProfile(const Graph& g, const FenCore& core, int k, ColorVec chi, VertexSet B)
        : g_(&g), core_(&core), k_(k), p_(core.p), b_(static_cast<int>(B.size())),
          chi_(g, std::move(chi), k), B_(std::move(B)) {
        const int n = g.n();
        if (k < p_) throw PreconditionViolated("S-profiles need k >= |S|");
        in_K_.assign(n, 0);
        in_Kp_.assign(n, 0);
        in_Ks_.assign(n, 0);
        in_NS_.assign(n, 0);
        s_nb_.assign(n, -1);
        for (Vertex s : core.S) {
            in_NS_[s] = 1;
            for (Vertex w : g.neighbors(s)) {
                in_NS_[w] = 1;
                if (!core.in_S[w] && s_nb_[w] < 0) s_nb_[w] = s;
            }
        }
        for (Vertex v = 0; v < n; ++v) {
            if (core.in_S[v]) continue;
            if (chi_.red(v) >= 0) {
                in_K_[v] = in_Kp_[v] = 1;
                K_.push_back(v);
                if (s_nb_[v] < 0) {
                    in_Ks_[v] = 1;
                    K_star_.push_back(v);
                }
            }
        }
        for (Vertex v : B_) in_Kp_[v] = 1;
        K_plus_ = K_;
        K_plus_.insert(K_plus_.end(), B_.begin(), B_.end());
        std::sort(K_plus_.begin(), K_plus_.end());

        // S-vertices χ-linked to each vertex of K*
        linked_S_.assign(n, {});
        for (Vertex s : core.S)
            for (Vertex w : g.neighbors(s)) {
                if (!in_Kp_[w] || !chi_.tight(w)) continue;
                for (Vertex v : g.neighbors(w))
                    if (in_Ks_[v] && v != s) linked_S_[v].push_back(s);
            }
        for (auto& l : linked_S_) {
            std::sort(l.begin(), l.end());
            l.erase(std::unique(l.begin(), l.end()), l.end());
        }
    }

    const Graph& g() const { return *g_; }
    const FenCore& core() const { return *core_; }
    int k() const { return k_; }
    int p() const { return p_; }
    int b() const { return b_; }
    const ColoringView& chi() const { return chi_; }
    const VertexSet& B() const { return B_; }
    const VertexSet& K() const { return K_; }
    const VertexSet& K_plus() const { return K_plus_; }
    const VertexSet& K_star() const { return K_star_; }

    bool in_S(Vertex v) const { return core_->in_S[v]; }
    bool in_K(Vertex v) const { return in_K_[v]; }
    bool in_K_plus(Vertex v) const { return in_Kp_[v]; }
    bool in_K_star(Vertex v) const { return in_Ks_[v]; }
    bool in_closed_NS(Vertex v) const { return in_NS_[v]; }  // v ∈ N[S]
    Vertex s_neighbor(Vertex v) const { return s_nb_[v]; }   // the S-neighbor of v ∉ S, or -1
    int dist(Vertex v) const { return core_->dist_to_Splus[v]; }
    int red_chi(Vertex v) const { return chi_.red(v); }
    const VertexSet& linked_S(Vertex v) const { return linked_S_[v]; }  // for v ∈ K*

    // w is a (ψ, x, y)-link
    bool is_link(const ColoringView& psi, Vertex w, Vertex x, Vertex y) const {
        return x != y && w != x && w != y && in_Kp_[w] && g_->has_edge(w, x) && g_->has_edge(w, y) &&
               psi.tight(w);
    }

    std::optional<Vertex> link(const ColoringView& psi, Vertex x, Vertex y) const {
        if (x == y) return std::nullopt;
        for (Vertex w : g_->neighbors(x))
            if (in_Kp_[w] && g_->has_edge(w, y) && psi.tight(w)) return w;
        return std::nullopt;
    }

    bool linked(const ColoringView& psi, Vertex x, Vertex y) const { return link(psi, x, y).has_value(); }

    // Every vertex of D other than `u` reaches S within two steps avoiding u.
    bool s_influenced(Vertex u, Vertex v) const {
        if (v != u && in_NS_[v]) return true;
        for (Vertex x : g_->neighbors(v))
            if (x != u && in_NS_[x]) return true;
        return false;
    }

private:
    const Graph* g_;
    const FenCore* core_;
    int k_, p_, b_;
    ColoringView chi_;
    VertexSet B_, K_, K_plus_, K_star_;
    std::vector<char> in_K_, in_Kp_, in_Ks_, in_NS_;
    std::vector<Vertex> s_nb_;
    std::vector<VertexSet> linked_S_;
};

// Calls f(profile) for each S-profile in canonical form; stops when f
// returns false. Canonical: colors of S in first-use order over ascending
// S, then the colors of B (ascending vertex order) moved to 1..b.
template <class F>
void for_each_s_profile(const Graph& g, const FenCore& core, int k, F&& f) {
    const auto& S = core.S;
    const int p = core.p;
    const int n = g.n();
    ColorVec col(n, 0);
    bool stop = false;

    std::function<void(std::size_t, int)> color_s = [&](std::size_t i, int used) {
        if (stop) return;
        if (i == S.size()) {
            ColoringView chi(g, col, k);
            std::vector<std::vector<Vertex>> cand(used + 1);
            for (Vertex s : S)
                if (chi.candidate(s)) cand[col[s]].push_back(s);
            VertexSet B;
            std::function<void(int)> pick = [&](int c) {
                if (stop) return;
                if (c > used) {
                    VertexSet Bs = B;
                    std::sort(Bs.begin(), Bs.end());
                    std::vector<int> rename(used + 1, 0);
                    int next = 0;
                    for (Vertex v : Bs) rename[col[v]] = ++next;
                    for (Vertex s : S)
                        if (!rename[col[s]]) rename[col[s]] = ++next;
                    ColorVec chi_col(n, 0);
                    for (Vertex s : S) chi_col[s] = rename[col[s]];
                    if (!f(SProfile(g, core, k, std::move(chi_col), std::move(Bs)))) stop = true;
                    return;
                }
                pick(c + 1);
                for (Vertex v : cand[c]) {
                    B.push_back(v);
                    pick(c + 1);
                    B.pop_back();
                }
            };
            pick(1);
            return;
        }
        Vertex v = S[i];
        for (int c = 1; c <= std::min(p, used + 1); ++c) {
            bool ok = true;
            for (Vertex w : g.neighbors(v))
                if (col[w] == c) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            col[v] = c;
            color_s(i + 1, std::max(used, c));
            col[v] = 0;
        }
    };
    color_s(0, 0);
}

inline std::vector<SProfile> enumerate_s_profiles(const Graph& g, const FenCore& core, int k) {
    std::vector<SProfile> out;
    for_each_s_profile(g, core, k, [&](SProfile pr) {
        out.push_back(std::move(pr));
        return true;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Pivots

struct PivotWitness {
    Vertex u = -1;
    VertexSet D;
    VertexSet links;  // the (u, D)-links
    bool maximal = false;
};

// (u, D)-links: vertices of D adjacent to u that have a neighbor in D.
inline VertexSet pivot_links(const Graph& g, Vertex u, const VertexSet& D) {
    VertexSet out;
    for (Vertex w : D) {
        if (!g.has_edge(u, w)) continue;
        for (Vertex x : g.neighbors(w))
            if (contains(D, x)) {
                out.push_back(w);
                break;
            }
    }
    return out;
}

// Literal check that u is a (ψ, D)-pivot.
inline bool is_psi_pivot(const SProfile& pr, const ColoringView& psi, Vertex u, const VertexSet& D) {
    const Graph& g = pr.g();
    if (pr.in_S(u) || contains(D, u)) return false;
    for (Vertex v : D) {
        if (g.has_edge(u, v)) continue;
        bool ok = false;
        for (Vertex w : g.neighbors(v))
            if (g.has_edge(u, w) && contains(D, w)) {
                ok = true;
                break;
            }
        if (!ok) return false;
    }
    for (Vertex w : pivot_links(g, u, D))
        if (!pr.in_K_plus(w) || !psi.tight(w)) return false;
    return true;
}

// Inclusion-maximal sets D ⊆ pool \ {u} for which u is a (ψ, D)-pivot.
// A neighbor of u that is not a tight member of K+ may enter D only
// without D-neighbors; the choice among such conflicting vertices is
// enumerated (unique when no short cycle passes through u).
inline std::vector<VertexSet> maximal_pivoted_sets(const SProfile& pr, const ColoringView& psi, Vertex u,
                                                   const std::vector<char>& in_pool,
                                                   std::size_t enumeration_cap = 1u << 16) {
    const Graph& g = pr.g();
    VertexSet good, bad, outer;
    for (Vertex w : g.neighbors(u)) {
        if (!in_pool[w]) continue;
        (pr.in_K_plus(w) && psi.tight(w) ? good : bad).push_back(w);
    }
    if (good.empty() && bad.empty()) return {VertexSet{}};
    for (Vertex w : good)
        for (Vertex v : g.neighbors(w))
            if (v != u && in_pool[v] && !g.has_edge(u, v)) outer.push_back(v);
    std::sort(outer.begin(), outer.end());
    outer.erase(std::unique(outer.begin(), outer.end()), outer.end());

    VertexSet universe = good;
    universe.insert(universe.end(), bad.begin(), bad.end());
    universe.insert(universe.end(), outer.begin(), outer.end());
    std::sort(universe.begin(), universe.end());

    VertexSet free_bad, conflicting;
    for (Vertex x : bad) {
        bool conflict = false;
        for (Vertex y : g.neighbors(x))
            if (contains(universe, y)) {
                conflict = true;
                break;
            }
        (conflict ? conflicting : free_bad).push_back(x);
    }
    if (conflicting.empty()) return {universe};

    auto build = [&](const VertexSet& X) -> std::optional<VertexSet> {
        for (std::size_t i = 0; i < X.size(); ++i)
            for (std::size_t j = i + 1; j < X.size(); ++j)
                if (g.has_edge(X[i], X[j])) return std::nullopt;
        auto touches_X = [&](Vertex v) {
            for (Vertex x : X)
                if (g.has_edge(v, x)) return true;
            return false;
        };
        VertexSet D = free_bad;
        D.insert(D.end(), X.begin(), X.end());
        VertexSet kept_good;
        for (Vertex w : good)
            if (!touches_X(w)) kept_good.push_back(w);
        D.insert(D.end(), kept_good.begin(), kept_good.end());
        for (Vertex v : outer) {
            if (touches_X(v)) continue;
            for (Vertex w : kept_good)
                if (g.has_edge(v, w)) {
                    D.push_back(v);
                    break;
                }
        }
        std::sort(D.begin(), D.end());
        return D;
    };

    std::vector<VertexSet> found;
    const std::size_t m = conflicting.size();
    if (m < 63 && (std::size_t{1} << m) <= enumeration_cap) {
        for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
            VertexSet X;
            for (std::size_t i = 0; i < m; ++i)
                if (mask >> i & 1) X.push_back(conflicting[i]);
            if (auto D = build(X)) found.push_back(std::move(*D));
        }
    } else {
        // too many conflicts: keep either all good vertices or greedily add conflicting ones
        if (auto D = build({})) found.push_back(std::move(*D));
        VertexSet X;
        for (Vertex x : conflicting) {
            X.push_back(x);
            if (!build(X)) X.pop_back();
        }
        if (auto D = build(X)) found.push_back(std::move(*D));
    }
    std::vector<VertexSet> maximal;
    for (std::size_t i = 0; i < found.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < found.size() && !dominated; ++j) {
            if (i == j) continue;
            bool sub = std::includes(found[j].begin(), found[j].end(), found[i].begin(), found[i].end());
            if (sub && (found[j].size() > found[i].size() || j < i)) dominated = true;
        }
        if (!dominated) maximal.push_back(found[i]);
    }
    return maximal;
}

inline bool covers_colors(const ColorVec& col, const VertexSet& D, int from, int to) {
    std::vector<char> seen(to + 2, 0);
    for (Vertex v : D)
        if (col[v] >= from && col[v] <= to) seen[col[v]] = 1;
    for (int c = from; c <= to; ++c)
        if (!seen[c]) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Failing checks

struct FailingReport {
    bool candidate_failing = false;
    std::optional<PivotWitness> pivot_failing;
    bool plan_failing = false;
    bool failing() const { return candidate_failing || pivot_failing.has_value() || plan_failing; }
};

// Searches for u ∉ S ∪ K and D ⊆ K ∪ S with K ⊆ D, [b] ⊆ χ(D), u a
// (χ, D)-pivot, and either |K+| <= k or no (χ, u, v)-link pair avoids S.
inline std::optional<PivotWitness> find_pivot_failing(const SProfile& pr) {
    const Graph& g = pr.g();
    const int n = g.n();
    const auto& K = pr.K();
    std::vector<char> pool(n, 0);
    for (Vertex v = 0; v < n; ++v) pool[v] = pr.in_S(v) || pr.in_K(v);

    // u must lie within distance two of every vertex that D must contain
    VertexSet anchors;
    if (!K.empty()) anchors.push_back(K.front());
    else if (pr.b() >= 1)
        for (Vertex s : pr.core().S)
            if (pr.chi()[s] == 1) anchors.push_back(s);
    std::vector<char> cand(n, anchors.empty() ? 1 : 0);
    for (Vertex a : anchors)
        for (Vertex x : g.neighbors(a)) {
            cand[x] = 1;
            for (Vertex y : g.neighbors(x)) cand[y] = 1;
        }

    const bool small_kplus = static_cast<int>(pr.K_plus().size()) <= pr.k();
    for (Vertex u = 0; u < n; ++u) {
        if (!cand[u] || pool[u]) continue;
        for (auto& D : maximal_pivoted_sets(pr, pr.chi(), u, pool)) {
            if (!std::includes(D.begin(), D.end(), K.begin(), K.end())) continue;
            if (!covers_colors(pr.chi().col(), D, 1, pr.b())) continue;
            bool ok = small_kplus;
            if (!ok) {
                ok = true;
                for (Vertex w : D) {
                    if (pr.in_S(w) || !g.has_edge(u, w) || !pr.in_K_plus(w) || !pr.chi().tight(w)) continue;
                    for (Vertex v : g.neighbors(w))
                        if (v != u && !pr.in_S(v) && contains(D, v)) {
                            ok = false;
                            break;
                        }
                    if (!ok) break;
                }
            }
            if (ok) return PivotWitness{u, D, pivot_links(g, u, D), true};
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Color plans

inline constexpr Vertex plan_star = -1;

struct ColorPlan {
    std::vector<Vertex> pi;  // indexed by color; meaningful on [b+1, p]; plan_star = ⋆
    std::optional<int> critical_color;
    std::optional<Vertex> anchor;
    bool valid = false;
};

// π is c-critical: π(c) = ⋆ and every vertex of K* is χ-linked to χ⁻¹(c).
inline bool plan_c_critical(const SProfile& pr, const std::vector<Vertex>& pi, int c) {
    if (pi[c] != plan_star) return false;
    for (Vertex v : pr.K_star()) {
        bool hit = false;
        for (Vertex s : pr.linked_S(v))
            if (pr.chi()[s] == c) {
                hit = true;
                break;
            }
        if (!hit) return false;
    }
    return true;
}

// Fills criticality/anchor and checks the five validity properties.
inline ColorPlan evaluate_plan(const SProfile& pr, std::vector<Vertex> pi) {
    const Graph& g = pr.g();
    const int b = pr.b(), p = pr.p();
    ColorPlan plan;
    plan.pi = std::move(pi);
    plan.pi.resize(p + 1, plan_star);
    for (int c = b + 1; c <= p; ++c)
        if (plan_c_critical(pr, plan.pi, c)) {
            plan.critical_color = c;
            break;
        }
    auto count_to = [&](Vertex s) {
        int cnt = 0;
        for (int c = b + 1; c <= p; ++c) cnt += plan.pi[c] == s;
        return cnt;
    };
    auto nbrs_in_K = [&](Vertex s) {
        int cnt = 0;
        for (Vertex w : g.neighbors(s)) cnt += pr.in_K(w);
        return cnt;
    };
    int stars = 0;
    for (int c = b + 1; c <= p; ++c) stars += plan.pi[c] == plan_star;
    bool ok = stars <= static_cast<int>(pr.K_star().size());
    for (Vertex s : pr.core().S) {
        if (!ok) break;
        if (count_to(s) > nbrs_in_K(s)) ok = false;
        int cs = pr.chi()[s];
        if (cs > b && cs <= p && plan.pi[cs] == s) ok = false;
        if (contains(pr.B(), s)) {
            int clash = 0;
            for (int c = b + 1; c <= p; ++c) {
                if (plan.pi[c] != s) continue;
                for (Vertex w : g.neighbors(s))
                    if (pr.chi()[w] == c) {
                        ++clash;
                        break;
                    }
            }
            if (clash > pr.red_chi(s)) ok = false;
        }
    }
    if (ok && plan.critical_color) {
        ok = static_cast<int>(pr.K_plus().size()) > pr.k();
        if (ok) {
            ok = false;
            for (Vertex s : pr.core().S) {
                if (count_to(s) >= nbrs_in_K(s)) continue;
                bool has_linked = false;
                for (Vertex v : pr.K_star())
                    if (contains(pr.linked_S(v), s)) {
                        has_linked = true;
                        break;
                    }
                if (has_linked) {
                    plan.anchor = s;
                    ok = true;
                    break;
                }
            }
        }
    }
    plan.valid = ok;
    return plan;
}

// Calls f(plan) for every valid color plan (backtracking over [b+1, p]
// with the per-color properties pruned early); stops when f returns false.
template <class F>
void for_each_color_plan(const SProfile& pr, F&& f) {
    const Graph& g = pr.g();
    const int b = pr.b(), p = pr.p();
    const auto& S = pr.core().S;
    std::vector<int> cap(g.n(), 0), used(g.n(), 0), red_left(g.n(), 0);
    for (Vertex s : S) {
        for (Vertex w : g.neighbors(s)) cap[s] += pr.in_K(w);
        red_left[s] = contains(pr.B(), s) ? pr.red_chi(s) : INT_MAX;
    }
    auto color_near = [&](Vertex s, int c) {
        for (Vertex w : g.neighbors(s))
            if (pr.chi()[w] == c) return true;
        return false;
    };
    std::vector<Vertex> pi(p + 1, plan_star);
    int stars = 0;
    const int star_cap = static_cast<int>(pr.K_star().size());
    bool stop = false;
    std::function<void(int)> rec = [&](int c) {
        if (stop) return;
        if (c > p) {
            ColorPlan plan = evaluate_plan(pr, pi);
            if (plan.valid && !f(plan)) stop = true;
            return;
        }
        if (stars < star_cap) {
            pi[c] = plan_star;
            ++stars;
            rec(c + 1);
            --stars;
        }
        for (Vertex s : S) {
            if (stop) return;
            if (used[s] >= cap[s]) continue;
            if (pr.chi()[s] == c) continue;
            bool clash = color_near(s, c);
            if (clash && red_left[s] == 0) continue;
            pi[c] = s;
            ++used[s];
            if (clash) --red_left[s];
            rec(c + 1);
            if (clash) ++red_left[s];
            --used[s];
        }
        pi[c] = plan_star;
    };
    rec(b + 1);
}

inline std::vector<ColorPlan> enumerate_color_plans(const SProfile& pr) {
    std::vector<ColorPlan> out;
    for_each_color_plan(pr, [&](const ColorPlan& plan) {
        out.push_back(plan);
        return true;
    });
    return out;
}

inline FailingReport failing_check(const SProfile& pr) {
    FailingReport r;
    r.candidate_failing = static_cast<int>(pr.K_plus().size()) < pr.k();
    r.pivot_failing = find_pivot_failing(pr);
    bool any = false;
    if (!r.candidate_failing)
        for_each_color_plan(pr, [&](const ColorPlan&) {
            any = true;
            return false;
        });
    r.plan_failing = !any;
    return r;
}

// ---------------------------------------------------------------------------
// Color realizations

struct ColorRealization {
    std::vector<Vertex> rho;  // indexed by color 0..k; -1 on [0, b]
    ColorVec col;             // χ_ρ
    VertexSet range, B_rho, S_rho;
    std::vector<char> in_range, in_B_rho, in_S_rho;

    // health flags, filled by evaluate_realization
    bool damage_free = false;
    bool realizes_valid_plan = false;
    int safety_level = 0;         // smallest ℓ with ρ ℓ-safe
    int almost_safety_level = 0;  // smallest ℓ with ρ almost ℓ-safe
    std::optional<Vertex> almost_safe_witness;
    bool pivot_free = false;
    bool block_free = false;

    bool feasible(int max_almost = 13) const {
        return damage_free && realizes_valid_plan && almost_safety_level <= max_almost && pivot_free && block_free;
    }
};

// Derived sets of ρ; throws if ρ is not an injective map into K.
inline ColorRealization make_realization(const SProfile& pr, std::vector<Vertex> rho) {
    const Graph& g = pr.g();
    const int n = g.n(), k = pr.k(), b = pr.b();
    ColorRealization re;
    re.rho = std::move(rho);
    if (static_cast<int>(re.rho.size()) != k + 1) throw PreconditionViolated("realization has wrong size");
    re.col = pr.chi().col();
    re.in_range.assign(n, 0);
    re.in_B_rho.assign(n, 0);
    re.in_S_rho.assign(n, 0);
    for (Vertex s : pr.core().S) re.in_S_rho[s] = 1;
    for (Vertex v : pr.B()) re.in_B_rho[v] = 1;
    for (int c = b + 1; c <= k; ++c) {
        Vertex v = re.rho[c];
        if (v < 0 || v >= n || !pr.in_K(v)) throw PreconditionViolated("realization leaves K");
        if (re.in_range[v]) throw PreconditionViolated("realization is not injective");
        re.in_range[v] = re.in_B_rho[v] = re.in_S_rho[v] = 1;
        re.col[v] = c;
        re.range.push_back(v);
    }
    std::sort(re.range.begin(), re.range.end());
    for (Vertex v = 0; v < n; ++v) {
        if (re.in_B_rho[v]) re.B_rho.push_back(v);
        if (re.in_S_rho[v]) re.S_rho.push_back(v);
    }
    return re;
}

// Some vertex of range(ρ) is a link between ρ(c) ∈ K* and χ⁻¹(c), c ∈ [b+1, p].
inline std::optional<Vertex> find_damaged(const SProfile& pr, const ColorRealization& re) {
    const Graph& g = pr.g();
    for (int c = pr.b() + 1; c <= pr.p(); ++c) {
        Vertex v = re.rho[c];
        if (!pr.in_K_star(v)) continue;
        for (Vertex x : g.neighbors(v)) {
            if (!re.in_range[x] || !pr.chi().tight(x)) continue;
            for (Vertex s : g.neighbors(x))
                if (pr.in_S(s) && pr.chi()[s] == c) return x;
        }
    }
    return std::nullopt;
}

// The plan realized by ρ: ⋆ when ρ(c) ∉ N(S), else its S-neighbor.
inline std::vector<Vertex> realized_plan(const SProfile& pr, const ColorRealization& re) {
    std::vector<Vertex> pi(pr.p() + 1, plan_star);
    for (int c = pr.b() + 1; c <= pr.p(); ++c) {
        Vertex s = pr.s_neighbor(re.rho[c]);
        pi[c] = s >= 0 ? s : plan_star;
    }
    return pi;
}

struct SafetyReport {
    int level = 0;
    int almost_level = 0;
    std::optional<Vertex> witness;
};

inline SafetyReport realization_safety(const SProfile& pr, const ColorRealization& re) {
    const Graph& g = pr.g();
    const int n = g.n();
    std::vector<int> far;
    for (int c = pr.p() + 1; c <= pr.k(); ++c) far.push_back(pr.dist(re.rho[c]));
    std::sort(far.begin(), far.end());
    std::vector<char> in_NB(n, 0);
    for (Vertex x : re.B_rho)
        for (Vertex y : g.neighbors(x)) in_NB[y] = 1;
    int best = -1, second = 0;
    Vertex best_v = -1;
    for (Vertex v : pr.K()) {
        if (re.in_B_rho[v]) continue;
        int cnt = static_cast<int>(far.end() - std::upper_bound(far.begin(), far.end(), pr.dist(v)));
        if (cnt > best) {
            second = std::max(second, best);
            best = cnt;
            best_v = v;
        } else {
            second = std::max(second, cnt);
        }
    }
    SafetyReport r;
    if (best < 0) return r;
    r.level = best;
    r.almost_level = best;
    bool eligible = in_NB[best_v];
    if (!eligible) {
        int cnt = 0;
        for (Vertex y : g.neighbors(best_v)) cnt += in_NB[y];
        eligible = cnt <= pr.p() + 2;
    }
    if (eligible && second < best) {
        r.almost_level = second;
        r.witness = best_v;
    }
    return r;
}

// A ρ-pivot with its largest ρ-pivoted set.
inline std::optional<PivotWitness> find_pivot(const SProfile& pr, const ColorRealization& re) {
    const Graph& g = pr.g();
    const int k = pr.k();
    ColoringView psi(g, re.col, k);
    std::vector<char> touched(g.n(), 0);
    for (Vertex s : re.S_rho)
        for (Vertex w : g.neighbors(s)) touched[w] = 1;
    for (Vertex u = 0; u < g.n(); ++u) {
        if (re.in_S_rho[u] || !touched[u]) continue;
        std::optional<VertexSet> best;
        for (auto& D : maximal_pivoted_sets(pr, psi, u, re.in_S_rho)) {
            if (static_cast<int>(D.size()) < k || !covers_colors(re.col, D, 1, k)) continue;
            if (!best || D.size() > best->size()) best = std::move(D);
        }
        if (best) return PivotWitness{u, *best, pivot_links(g, u, *best), true};
    }
    return std::nullopt;
}

// u ∈ B_ρ is ρ-blocked by c.
inline bool is_blocked_by(const SProfile& pr, const ColorRealization& re, const ColoringView& psi, Vertex u,
                          int c) {
    const Graph& g = pr.g();
    if (re.col[u] == c) return false;
    for (Vertex x : g.neighbors(u))
        if (re.col[x] == c) return false;
    for (Vertex v : g.neighbors(u)) {
        if (re.in_S_rho[v]) continue;
        bool reached = false;
        for (Vertex w : g.neighbors(v))
            if (re.col[w] == c) {
                reached = true;
                break;
            }
        for (Vertex x : g.neighbors(v)) {
            if (reached) break;
            if (!re.in_B_rho[x] || !pr.in_K_plus(x) || !psi.tight(x)) continue;
            for (Vertex w : g.neighbors(x))
                if (w != v && re.col[w] == c) {
                    reached = true;
                    break;
                }
        }
        if (!reached) return false;
    }
    return true;
}

inline std::optional<std::pair<Vertex, int>> block_check(const SProfile& pr, const ColorRealization& re) {
    ColoringView psi(pr.g(), re.col, pr.k());
    for (Vertex u : re.B_rho)
        for (int c = 1; c <= pr.k(); ++c)
            if (is_blocked_by(pr, re, psi, u, c)) return std::make_pair(u, c);
    return std::nullopt;
}

// Recomputes every health flag of `re` from scratch.
inline void evaluate_realization(const SProfile& pr, ColorRealization& re) {
    re.damage_free = !find_damaged(pr, re).has_value();
    re.realizes_valid_plan = evaluate_plan(pr, realized_plan(pr, re)).valid;
    auto s = realization_safety(pr, re);
    re.safety_level = s.level;
    re.almost_safety_level = s.almost_level;
    re.almost_safe_witness = s.witness;
    re.pivot_free = !find_pivot(pr, re).has_value();
    re.block_free = !block_check(pr, re).has_value();
}

}  // namespace bcol
