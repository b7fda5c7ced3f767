#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <set>

#include "bcol/fen_solver.hpp"
#include "bcol/generators.hpp"
#include "bcol/reference.hpp"
#include "bcol/verify.hpp"
#include "oracles.hpp"

using namespace bcol;

namespace {

Graph cycle(int n) {
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i) es.emplace_back(i, (i + 1) % n);
    return Graph(n, es);
}

// ----- literal recomputations --------------------------------------------

int red_literal(const Graph& g, const std::vector<int>& col, int k, int v) {
    std::set<int> colors;
    int unc = 0;
    std::vector<int> closed{v};
    for (int w = 0; w < g.n(); ++w)
        if (g.has_edge(v, w)) closed.push_back(w);
    for (int x : closed) {
        if (col[x] == 0) ++unc;
        else colors.insert(col[x]);
    }
    return unc + static_cast<int>(colors.size()) - k;
}

bool adj(const Graph& g, int a, int b) { return a != b && g.has_edge(a, b); }

// K+ membership and tightness for an arbitrary coloring psi
bool tight_in_Kplus(const Graph& g, const SProfile& pr, const std::vector<int>& psi, int w) {
    bool in_kplus = false;
    if (std::find(pr.B().begin(), pr.B().end(), w) != pr.B().end()) in_kplus = true;
    if (!pr.core().in_S[w] && red_literal(g, pr.chi().col(), pr.k(), w) >= 0) in_kplus = true;
    return in_kplus && red_literal(g, psi, pr.k(), w) == 0;
}

bool pivot_literal(const Graph& g, const SProfile& pr, const std::vector<int>& psi, int u,
                   const std::vector<int>& D) {
    std::set<int> Ds(D.begin(), D.end());
    if (Ds.count(u)) return false;
    for (int v : D) {
        if (adj(g, u, v)) continue;
        bool ok = false;
        for (int w : D)
            if (adj(g, u, w) && adj(g, w, v)) ok = true;
        if (!ok) return false;
    }
    for (int w : D) {
        if (!adj(g, u, w)) continue;
        bool has = false;
        for (int x : D)
            if (adj(g, w, x)) has = true;
        if (has && !tight_in_Kplus(g, pr, psi, w)) return false;
    }
    return true;
}

bool has_rho_pivot_literal(const Graph& g, const SProfile& pr, const ColorRealization& re) {
    std::vector<int> Sr;
    for (int v = 0; v < g.n(); ++v)
        if (re.col[v] != 0) Sr.push_back(v);
    const int m = static_cast<int>(Sr.size());
    for (int u = 0; u < g.n(); ++u) {
        if (re.col[u] != 0) continue;
        for (int mask = 1; mask < (1 << m); ++mask) {
            std::vector<int> D;
            std::set<int> cols;
            for (int i = 0; i < m; ++i)
                if (mask >> i & 1) {
                    D.push_back(Sr[i]);
                    cols.insert(re.col[Sr[i]]);
                }
            if (static_cast<int>(cols.size()) != pr.k()) continue;
            if (pivot_literal(g, pr, re.col, u, D)) return true;
        }
    }
    return false;
}

bool blocked_literal(const Graph& g, const SProfile& pr, const ColorRealization& re, int u, int c) {
    const auto& col = re.col;
    if (col[u] == c) return false;
    for (int w = 0; w < g.n(); ++w)
        if (adj(g, u, w) && col[w] == c) return false;
    for (int v = 0; v < g.n(); ++v) {
        if (!adj(g, u, v) || col[v] != 0) continue;
        std::set<int> reach;
        for (int w = 0; w < g.n(); ++w) {
            if (!adj(g, v, w)) continue;
            if (col[w]) reach.insert(col[w]);
            bool in_brho = re.in_B_rho[w];
            if (in_brho && tight_in_Kplus(g, pr, col, w))
                for (int x = 0; x < g.n(); ++x)
                    if (adj(g, w, x) && x != v && col[x]) reach.insert(col[x]);
        }
        if (!reach.count(c)) return false;
    }
    return true;
}

// A χ-linked pair (x, y) through a χ-tight member of K+.
bool chi_linked(const Graph& g, const SProfile& pr, int x, int y) {
    if (x == y) return false;
    for (int w = 0; w < g.n(); ++w)
        if (w != x && w != y && adj(g, w, x) && adj(g, w, y) && tight_in_Kplus(g, pr, pr.chi().col(), w))
            return true;
    return false;
}

bool plan_valid_literal(const Graph& g, const SProfile& pr, const std::vector<int>& pi) {
    const int b = pr.b(), p = pr.p(), k = pr.k();
    const auto& S = pr.core().S;
    const auto& chi = pr.chi().col();
    std::vector<int> K, Kstar;
    for (int v = 0; v < g.n(); ++v) {
        if (pr.core().in_S[v] || red_literal(g, chi, k, v) < 0) continue;
        K.push_back(v);
        bool near_S = false;
        for (int s : S) near_S |= adj(g, s, v);
        if (!near_S) Kstar.push_back(v);
    }
    auto nk = [&](int s) {
        int c = 0;
        for (int v : K) c += adj(g, s, v);
        return c;
    };
    auto pre = [&](int s) {
        int c = 0;
        for (int x = b + 1; x <= p; ++x) c += pi[x] == s;
        return c;
    };
    int stars = 0;
    for (int x = b + 1; x <= p; ++x) stars += pi[x] == -1;
    if (stars > static_cast<int>(Kstar.size())) return false;
    for (int s : S) {
        if (pre(s) > nk(s)) return false;
        if (chi[s] > b && pi[chi[s]] == s) return false;
        bool inB = std::count(pr.B().begin(), pr.B().end(), s) > 0;
        if (inB) {
            int clash = 0;
            for (int x = b + 1; x <= p; ++x) {
                if (pi[x] != s) continue;
                bool near = false;
                for (int w = 0; w < g.n(); ++w) near |= adj(g, s, w) && chi[w] == x;
                clash += near;
            }
            if (clash > red_literal(g, chi, k, s)) return false;
        }
    }
    // criticality
    std::optional<int> crit;
    for (int x = b + 1; x <= p && !crit; ++x) {
        if (pi[x] != -1) continue;
        bool all = true;
        for (int v : Kstar) {
            bool hit = false;
            for (int s : S)
                if (chi[s] == x && chi_linked(g, pr, v, s)) hit = true;
            all &= hit;
        }
        if (all) crit = x;
    }
    if (!crit) return true;
    int kplus = static_cast<int>(K.size() + pr.B().size());
    if (kplus <= k) return false;
    for (int s : S) {
        if (pre(s) >= nk(s)) continue;
        for (int v : Kstar)
            if (chi_linked(g, pr, v, s)) return true;
    }
    return false;
}

// Canonical profile key
using ProfileKey = std::pair<std::vector<int>, std::vector<int>>;

std::set<ProfileKey> profiles_exhaustive(const Graph& g, const FenCore& core, int k) {
    const auto& S = core.S;
    const int p = core.p;
    std::set<ProfileKey> out;
    std::vector<int> col(g.n(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == S.size()) {
            for (auto [a, b] : g.edges())
                if (col[a] && col[a] == col[b]) return;
            std::vector<int> cands;
            for (int s : S)
                if (red_literal(g, col, k, s) >= 0) cands.push_back(s);
            const int m = static_cast<int>(cands.size());
            for (int mask = 0; mask < (1 << m); ++mask) {
                std::vector<int> B;
                for (int j = 0; j < m; ++j)
                    if (mask >> j & 1) B.push_back(cands[j]);
                // B colors distinct and equal to 1..|B| in vertex order
                bool ok = true;
                for (std::size_t j = 0; j < B.size(); ++j) ok &= col[B[j]] == static_cast<int>(j) + 1;
                if (!ok) continue;
                int next = static_cast<int>(B.size()) + 1;
                std::set<int> seen;
                for (int s : S) {
                    if (col[s] <= static_cast<int>(B.size()) || seen.count(col[s])) continue;
                    ok &= col[s] == next;
                    seen.insert(col[s]);
                    ++next;
                }
                if (ok) out.insert({col, B});
            }
            return;
        }
        for (int c = 1; c <= p; ++c) {
            col[S[i]] = c;
            rec(i + 1);
        }
        col[S[i]] = 0;
    };
    rec(0);
    return out;
}

Graph small_fen_graph(Rng& rng) {
    int n = uniform_int(rng, 4, 9);
    return random_fen_graph(n, uniform_int(rng, 0, 3), rng);
}

}  // namespace

// ----- fen-core ----------------------------------------------------------

TEST(FenCore, LongCycleHasTwoVertexCore) {
    Graph g = cycle(20);
    auto core = compute_fen_core(g);
    EXPECT_EQ(core.p, 2);
    ASSERT_EQ(core.outer_paths.size(), 1u);
    EXPECT_EQ(core.outer_paths[0].size(), 18u);
    EXPECT_EQ(validate_fen_core(g, core), "");
}

TEST(FenCore, ShortCycleIsAbsorbed) {
    Graph g = cycle(8);
    auto core = compute_fen_core(g);
    EXPECT_EQ(core.p, 8);
    EXPECT_TRUE(core.outer_paths.empty());
    EXPECT_EQ(validate_fen_core(g, core), "");
}

TEST(FenCore, TreeHasEmptyCore) {
    Rng rng(3);
    Graph t = random_tree(30, rng);
    auto core = compute_fen_core(t);
    EXPECT_EQ(core.p, 0);
    EXPECT_EQ(core.S_plus, VertexSet{0});
    for (int v = 0; v < t.n(); ++v) EXPECT_LT(core.dist_to_Splus[v], t.n());
    EXPECT_EQ(validate_fen_core(t, core), "");
}

TEST(FenCore, RandomGraphsValidateAgainstOracles) {
    Rng rng(11);
    for (int it = 0; it < 300; ++it) {
        int n = uniform_int(rng, 2, 40);
        Graph g = random_fen_graph(n, uniform_int(rng, 0, 4), rng);
        auto core = compute_fen_core(g);
        ASSERT_EQ(validate_fen_core(g, core), "") << "iteration " << it;
        // every cycle meets an edge of G[S]
        std::vector<Edge> kept;
        for (auto [a, b] : g.edges())
            if (!(core.in_S[a] && core.in_S[b])) kept.emplace_back(a, b);
        EXPECT_TRUE(oracle::acyclic(n, kept));
        EXPECT_LE(core.p, 32 * feedback_edge_number(g));
    }
}

TEST(FenCore, PathCountsMatchSimplePathEnumeration) {
    Rng rng(5);
    for (int it = 0; it < 60; ++it) {
        Graph g = random_fen_graph(uniform_int(rng, 3, 14), uniform_int(rng, 0, 3), rng);
        auto core = compute_fen_core(g);
        for (int u = 0; u < g.n(); ++u) {
            if (core.in_S[u]) continue;
            long long paths = 0;
            std::vector<char> on(g.n(), 0);
            std::function<void(int)> dfs = [&](int v) {
                on[v] = 1;
                for (int w : g.neighbors(v)) {
                    if (on[w]) continue;
                    if (core.in_S[w]) ++paths;
                    else dfs(w);
                }
                on[v] = 0;
            };
            dfs(u);
            EXPECT_EQ(count_paths_to_S(g, core.in_S, u), paths);
        }
    }
}

TEST(FenCore, ValidatorRejectsBrokenCores) {
    Graph g = cycle(20);
    auto core = compute_fen_core(g);
    auto broken = core;
    broken.in_S.assign(g.n(), false);
    broken.S.clear();
    broken.p = 0;
    EXPECT_NE(validate_fen_core(g, broken), "");
    auto short_path = core;
    // S = {0, 3}: the outer path 1-2 is too short
    short_path.S = {0, 3};
    short_path.in_S.assign(g.n(), false);
    short_path.in_S[0] = short_path.in_S[3] = true;
    short_path.S_plus = short_path.S;
    EXPECT_NE(validate_fen_core(g, short_path), "");
}

// ----- profiles and plans ------------------------------------------------

TEST(FenProfile, EnumerationMatchesExhaustiveCanonicalForms) {
    Rng rng(21);
    int checked = 0;
    for (int it = 0; it < 120; ++it) {
        Graph g = small_fen_graph(rng);
        auto core = compute_fen_core(g);
        if (core.p > 5) continue;
        for (int k = std::max(1, core.p); k <= g.n(); ++k) {
            std::set<ProfileKey> got;
            std::size_t count = 0;
            for_each_s_profile(g, core, k, [&](const SProfile& pr) {
                got.insert({pr.chi().col(), pr.B()});
                ++count;
                return true;
            });
            EXPECT_EQ(count, got.size()) << "duplicate profiles";
            EXPECT_EQ(got, profiles_exhaustive(g, core, k));
            ++checked;
        }
    }
    EXPECT_GT(checked, 50);
}

TEST(FenProfile, PlansMatchGenerateAndFilter) {
    Rng rng(22);
    int profiles = 0;
    for (int it = 0; it < 150; ++it) {
        Graph g = small_fen_graph(rng);
        auto core = compute_fen_core(g);
        if (core.p > 5 || core.p == 0) continue;
        for (int k = core.p; k <= g.n(); ++k)
            for_each_s_profile(g, core, k, [&](const SProfile& pr) {
                ++profiles;
                std::set<std::vector<int>> got;
                for (auto& plan : enumerate_color_plans(pr)) {
                    std::vector<int> key(plan.pi.begin() + pr.b() + 1, plan.pi.end());
                    EXPECT_TRUE(got.insert(key).second);
                }
                std::set<std::vector<int>> want;
                const int slots = pr.p() - pr.b();
                std::vector<int> opts{-1};
                opts.insert(opts.end(), core.S.begin(), core.S.end());
                std::vector<int> pi(pr.p() + 1, -1);
                std::function<void(int)> rec = [&](int c) {
                    if (c > pr.p()) {
                        if (plan_valid_literal(g, pr, pi)) want.insert(std::vector<int>(pi.begin() + pr.b() + 1, pi.end()));
                        return;
                    }
                    for (int o : opts) {
                        pi[c] = o;
                        rec(c + 1);
                    }
                };
                (void)slots;
                rec(pr.b() + 1);
                EXPECT_EQ(got, want);
                return true;
            });
    }
    EXPECT_GT(profiles, 100);
}

// ----- realizations -----------------------------------------------------

namespace {

// Random injective maps [b+1, k] -> K for every profile of a few graphs.
template <class F>
void for_random_realizations(std::uint64_t seed, int graphs, F&& f) {
    Rng rng(seed);
    for (int it = 0; it < graphs; ++it) {
        Graph g = it % 3 == 0 ? random_tree(uniform_int(rng, 5, 12), rng) : small_fen_graph(rng);
        auto core = compute_fen_core(g);
        for (int k = std::max(2, core.p); k <= std::min(g.n(), 6); ++k)
            for_each_s_profile(g, core, k, [&](const SProfile& pr) {
                int need = k - pr.b();
                if (static_cast<int>(pr.K().size()) < need) return true;
                for (int rep = 0; rep < 3; ++rep) {
                    auto K = pr.K();
                    shuffle_vec(K, rng);
                    std::vector<Vertex> rho(k + 1, -1);
                    for (int c = pr.b() + 1; c <= k; ++c) rho[c] = K[c - pr.b() - 1];
                    auto re = make_realization(pr, rho);
                    if (re.S_rho.size() > 12) continue;
                    f(g, pr, re);
                }
                return true;
            });
    }
}

}  // namespace

TEST(FenRealization, PivotFinderMatchesExhaustiveSearch) {
    int total = 0, with_pivot = 0;
    for_random_realizations(31, 120, [&](const Graph& g, const SProfile& pr, const ColorRealization& re) {
        bool lit = has_rho_pivot_literal(g, pr, re);
        auto found = find_pivot(pr, re);
        EXPECT_EQ(found.has_value(), lit);
        if (found) {
            EXPECT_TRUE(pivot_literal(g, pr, re.col, found->u, found->D));
            EXPECT_TRUE(is_psi_pivot(pr, ColoringView(g, re.col, pr.k()), found->u, found->D));
        }
        ++total;
        with_pivot += lit;
    });
    EXPECT_GE(total, 200);
    EXPECT_GT(with_pivot, 0);
}

TEST(FenRealization, PivotedTreeHasPivot) {
    Graph t = pivoted_tree(4);
    auto core = compute_fen_core(t);
    auto profiles = enumerate_s_profiles(t, core, 4);
    ASSERT_EQ(profiles.size(), 1u);
    const auto& pr = profiles[0];
    ASSERT_EQ(pr.K().size(), 4u);
    std::vector<Vertex> rho{-1, pr.K()[0], pr.K()[1], pr.K()[2], pr.K()[3]};
    auto re = make_realization(pr, rho);
    auto pv = find_pivot(pr, re);
    ASSERT_TRUE(pv.has_value());
    EXPECT_EQ(pv->u, 0);
    EXPECT_TRUE(has_rho_pivot_literal(t, pr, re));
}

TEST(FenRealization, BlockCheckMatchesDefinition) {
    int total = 0, blocked = 0;
    for_random_realizations(41, 90, [&](const Graph& g, const SProfile& pr, const ColorRealization& re) {
        ColoringView psi(g, re.col, pr.k());
        for (Vertex u : re.B_rho)
            for (int c = 1; c <= pr.k(); ++c) {
                bool lit = blocked_literal(g, pr, re, u, c);
                EXPECT_EQ(is_blocked_by(pr, re, psi, u, c), lit);
                blocked += lit;
                ++total;
            }
    });
    EXPECT_GT(total, 500);
    EXPECT_GT(blocked, 0);
}

TEST(FenRealization, DamageAndSafetyFromDefinitions) {
    for_random_realizations(51, 60, [&](const Graph& g, const SProfile& pr, const ColorRealization& re) {
        // damage: some range vertex links ρ(c) ∈ K* to χ⁻¹(c)
        bool damaged = false;
        for (int c = pr.b() + 1; c <= pr.p(); ++c) {
            int v = re.rho[c];
            if (!pr.in_K_star(v)) continue;
            for (int x : re.range)
                for (int s : pr.core().S)
                    if (adj(g, v, x) && adj(g, x, s) && pr.chi()[s] == c &&
                        red_literal(g, pr.chi().col(), pr.k(), x) == 0)
                        damaged = true;
        }
        EXPECT_EQ(find_damaged(pr, re).has_value(), damaged);
        // safety level: max over K \ B_ρ of colors in [p+1, k] placed strictly farther
        int level = 0;
        for (int v : pr.K()) {
            if (re.in_B_rho[v]) continue;
            int cnt = 0;
            for (int c = pr.p() + 1; c <= pr.k(); ++c) cnt += pr.dist(v) < pr.dist(re.rho[c]);
            level = std::max(level, cnt);
        }
        EXPECT_EQ(realization_safety(pr, re).level, level);
    });
}

// ----- failing profiles -------------------------------------------------

TEST(FenFailing, PivotedTreeProfileFails) {
    for (bool unpivot : {false, true}) {
        Graph t = pivoted_tree(4, unpivot);
        auto core = compute_fen_core(t);
        auto profiles = enumerate_s_profiles(t, core, 4);
        ASSERT_EQ(profiles.size(), 1u);
        auto rep = failing_check(profiles[0]);
        EXPECT_EQ(rep.pivot_failing.has_value(), !unpivot);
        if (rep.pivot_failing) {
            EXPECT_EQ(rep.pivot_failing->u, 0);
        }
        EXPECT_FALSE(rep.candidate_failing);
    }
}

TEST(FenFailing, CandidateFailingMeansFewCandidates) {
    Rng rng(61);
    for (int it = 0; it < 80; ++it) {
        Graph g = small_fen_graph(rng);
        auto core = compute_fen_core(g);
        for (int k = std::max(1, core.p); k <= g.n(); ++k)
            for_each_s_profile(g, core, k, [&](const SProfile& pr) {
                int kplus = 0;
                for (int v = 0; v < g.n(); ++v)
                    kplus += (!core.in_S[v] && red_literal(g, pr.chi().col(), k, v) >= 0);
                kplus += static_cast<int>(pr.B().size());
                EXPECT_EQ(failing_check(pr).candidate_failing, kplus < k);
                return true;
            });
    }
}

// ----- the solver -------------------------------------------------------

TEST(FenSolver, AgreesWithBruteForceOnSmallGraphs) {
    Rng rng(71);
    for (int it = 0; it < 120; ++it) {
        Graph g = random_fen_graph(uniform_int(rng, 1, 10), uniform_int(rng, 0, 4), rng);
        for (int k = 1; k <= g.n(); ++k) {
            auto a = solve_fen(g, k);
            auto b = brute_force_b_coloring(g, k);
            ASSERT_EQ(a.has_value(), b.has_value()) << "k=" << k;
            if (a) {
                EXPECT_TRUE(oracle::is_b_coloring(g, oracle::to_vec(*a), k));
            }
        }
    }
}

TEST(FenSolver, PivotedTreeIsNo) {
    Graph t = pivoted_tree(18);
    FenStats st;
    FenOptions opt;
    opt.stats = &st;
    EXPECT_FALSE(solve_fen(t, 18, opt).has_value());
    EXPECT_TRUE(st.used_pipeline);
    EXPECT_EQ(st.failing_profiles, 1);
}

TEST(FenSolver, UnpivotedTreeIsYes) {
    Graph t = pivoted_tree(18, true);
    FenStats st;
    FenOptions opt;
    opt.stats = &st;
    opt.check_invariants = true;
    auto c = solve_fen(t, 18, opt);
    ASSERT_TRUE(c.has_value());
    EXPECT_TRUE(verify_b_coloring(t, *c, 18).is_b_coloring);
    EXPECT_EQ(st.violations, 0) << (st.messages.empty() ? "" : st.messages[0]);
}

TEST(FenSolver, TreeVariantsFollowThePivotCriterion) {
    Rng rng(81);
    for (int it = 0; it < 16; ++it) {
        bool unpivot = it % 2 == 1;
        Graph t = pivoted_tree_variant(18, unpivot, rng);
        ASSERT_EQ(m_degree(t), 18);
        bool pivoted = pivoted_tree_report(t).pivoted;
        auto c = solve_fen(t, 18);
        EXPECT_EQ(c.has_value(), !pivoted) << "variant " << it;
        if (c) {
            EXPECT_TRUE(verify_b_coloring(t, *c, 18).is_b_coloring);
        }
    }
}

TEST(FenSolver, OneFeedbackEdgeAtThreshold) {
    const int k = fen_threshold(1);
    Graph base = pivoted_tree(k, true);
    // two leaves under different gates, joined by a 5-vertex path
    Vertex a = -1, b = -1;
    for (Vertex v = 0; v < base.n() && (a < 0 || b < 0); ++v) {
        if (base.degree(v) != 1) continue;
        Vertex parent = base.neighbors(v)[0];
        if (base.degree(parent) < k - 1) continue;
        Vertex gate = -1;
        for (Vertex w : base.neighbors(parent))
            if (base.has_edge(w, 0)) gate = w;
        if (gate == 1 && a < 0) a = v;
        if (gate == 2 && b < 0) b = v;
    }
    ASSERT_GE(a, 0);
    ASSERT_GE(b, 0);
    auto es = base.edges();
    int n = base.n();
    Vertex prev = a;
    for (int i = 0; i < 5; ++i) {
        es.emplace_back(prev, n);
        prev = n++;
    }
    es.emplace_back(prev, b);
    Graph g(n, es);
    ASSERT_EQ(feedback_edge_number(g), 1);
    auto core = compute_fen_core(g);
    ASSERT_EQ(validate_fen_core(g, core), "");
    FenStats st;
    FenOptions opt;
    opt.stats = &st;
    auto c = solve_fen(g, k, opt);
    ASSERT_TRUE(c.has_value()) << (st.messages.empty() ? "" : st.messages[0]);
    EXPECT_TRUE(st.used_pipeline);
    EXPECT_TRUE(verify_b_coloring(g, *c, k).is_b_coloring);
}

TEST(FenProfile, SingleVertexCore) {
    // a star: its center carries S by hand
    std::vector<Edge> es;
    for (int i = 1; i <= 4; ++i) es.emplace_back(0, i);
    Graph g(5, es);
    FenCore core;
    core.S = {0};
    core.S_plus = {0};
    core.p = 1;
    core.in_S.assign(5, false);
    core.in_S[0] = true;
    core.dist_to_Splus = {0, 1, 1, 1, 1};
    for (int k : {2, 5, 6}) {
        auto profiles = enumerate_s_profiles(g, core, k);
        const bool candidate = 5 - k >= 0;  // four uncolored neighbors + one color
        ASSERT_EQ(profiles.size(), candidate ? 2u : 1u) << "k=" << k;
        EXPECT_TRUE(profiles[0].B().empty());
        if (candidate) {
            EXPECT_EQ(profiles[1].B(), VertexSet{0});
        }
    }
}

TEST(FenProfile, EmptyCoreHasOneProfileAndOnePlan) {
    Graph t = pivoted_tree(4, true);
    auto core = compute_fen_core(t);
    auto profiles = enumerate_s_profiles(t, core, 4);
    ASSERT_EQ(profiles.size(), 1u);
    auto plans = enumerate_color_plans(profiles[0]);
    ASSERT_EQ(plans.size(), 1u);
    EXPECT_TRUE(plans[0].valid);
    EXPECT_FALSE(plans[0].critical_color.has_value());
}

TEST(FenRealization, AlgorithmOneOnUnpivotedTree) {
    Graph t = pivoted_tree(4, true);
    auto core = compute_fen_core(t);
    auto pr = enumerate_s_profiles(t, core, 4).at(0);
    auto plan = enumerate_color_plans(pr).at(0);
    auto re = fen_detail::build_realization(pr, plan);
    EXPECT_EQ(re.range.size(), 4u);
    std::set<int> cols;
    for (Vertex v : re.range) cols.insert(re.col[v]);
    EXPECT_EQ(cols.size(), 4u);
    EXPECT_FALSE(find_damaged(pr, re).has_value());
    EXPECT_EQ(realization_safety(pr, re).level, 0);
}

TEST(FenSolver, HubTreesMatchTheTreeFormula) {
    // pivoted-tree variants with extra high-degree hubs near or far from the pivot
    Rng rng(91);
    int pivoted = 0;
    FenStats st;
    FenOptions opt;
    opt.stats = &st;
    opt.check_invariants = true;
    for (int it = 0; it < 150; ++it) {
        const int k = 18;
        Graph base = pivoted_tree_variant(k, coin(rng, 0.3), rng);
        auto es = base.edges();
        int n = base.n();
        std::vector<int> deg(n, 0);
        for (auto [a, b] : es) ++deg[a], ++deg[b];
        auto fresh = [&](int parent) {
            deg.push_back(1);
            ++deg[parent];
            es.emplace_back(parent, n);
            return n++;
        };
        for (int e = uniform_int(rng, 1, 3); e > 0; --e) {
            int mode = uniform_int(rng, 0, 3);
            int at = mode == 0   ? 0
                     : mode == 1 ? base.neighbors(0)[uniform_int(rng, 0, base.degree(0) - 1)]
                                 : uniform_int(rng, 0, base.n() - 1);
            int h = mode == 3 ? fresh(fresh(at)) : fresh(at);
            int target = k - 1 + uniform_int(rng, -1, 1);
            while (deg[h] < target) fresh(h);
        }
        Graph t(n, es);
        const int md = m_degree(t);
        const bool piv = b_chromatic_tree(t) < md;
        pivoted += piv;
        auto c = solve_fen(t, md, opt);
        EXPECT_EQ(c.has_value(), !piv) << "tree " << it;
        if (c) {
            EXPECT_TRUE(verify_b_coloring(t, *c, md).is_b_coloring);
        }
    }
    EXPECT_GT(pivoted, 5);
    EXPECT_GT(st.elimination_steps, 0);
    EXPECT_EQ(st.violations, 0) << (st.messages.empty() ? "" : st.messages[0]);
}

TEST(FenFailing, PivotFailingMatchesSubsetSearch) {
    Rng rng(101);
    int checked = 0, failing = 0;
    for (int it = 0; it < 150; ++it) {
        Graph g = it % 2 ? random_tree(uniform_int(rng, 4, 11), rng) : small_fen_graph(rng);
        auto core = compute_fen_core(g);
        for (int k = std::max(2, core.p); k <= std::min(g.n(), 6); ++k)
            for_each_s_profile(g, core, k, [&](const SProfile& pr) {
                std::vector<int> pool;
                for (int v = 0; v < g.n(); ++v)
                    if (core.in_S[v] || pr.in_K(v)) pool.push_back(v);
                if (pool.size() > 12) return true;
                const auto& chi = pr.chi().col();
                const bool small = static_cast<int>(pr.K_plus().size()) <= k;
                bool want = false;
                for (int u = 0; u < g.n() && !want; ++u) {
                    if (std::count(pool.begin(), pool.end(), u)) continue;
                    // (b): no χ-tight w ∈ K ∩ N(u) with a K-neighbor other than u
                    bool no_link_pair = true;
                    for (int w : pr.K())
                        for (int v : pr.K())
                            if (adj(g, u, w) && adj(g, w, v) && v != u && red_literal(g, chi, k, w) == 0)
                                no_link_pair = false;
                    if (!small && !no_link_pair) continue;
                    const int m = static_cast<int>(pool.size());
                    for (int mask = 0; mask < (1 << m) && !want; ++mask) {
                        std::vector<int> D;
                        std::set<int> cols;
                        for (int i = 0; i < m; ++i)
                            if (mask >> i & 1) {
                                D.push_back(pool[i]);
                                if (chi[pool[i]]) cols.insert(chi[pool[i]]);
                            }
                        bool hasK = true;
                        for (int v : pr.K()) hasK &= std::count(D.begin(), D.end(), v) > 0;
                        bool hasB = true;
                        for (int c = 1; c <= pr.b(); ++c) hasB &= cols.count(c) > 0;
                        if (hasK && hasB && pivot_literal(g, pr, chi, u, D)) want = true;
                    }
                }
                auto got = find_pivot_failing(pr);
                EXPECT_EQ(got.has_value(), want);
                ++checked;
                failing += want;
                return true;
            });
    }
    EXPECT_GT(checked, 100);
    EXPECT_GT(failing, 0);
}
