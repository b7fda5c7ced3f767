// Acceptance run: one PASS/FAIL line per criterion, with timings.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "bcol/cocluster.hpp"
#include "bcol/fen_solver.hpp"
#include "bcol/generators.hpp"
#include "bcol/reference.hpp"
#include "bcol/twdp.hpp"
#include "bcol/verify.hpp"
#include "oracles.hpp"

using namespace bcol;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
    void fail(const std::string& why) {
        if (ok) detail = why;
        ok = false;
    }
};

int failures = 0;

void report(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_s > 0 && secs >= limit_s) o.fail("runtime " + std::to_string(secs) + " s over limit");
    failures += !o.ok;
    std::printf("AC%d %s  %-44s %8.2f s", id, o.ok ? "PASS" : "FAIL", name, secs);
    if (limit_s > 0) std::printf(" (limit %.0f s)", limit_s);
    if (!o.detail.empty()) std::printf("  %s", o.detail.c_str());
    std::printf("\n");
    std::fflush(stdout);
}

bool verified(const Graph& g, const std::optional<PartialColoring>& c, int k) {
    return !c || verify_b_coloring(g, *c, k).is_b_coloring;
}

// Invariant counters shared by criteria 2, 4 and 6.
FenStats pipeline_stats;

FenOptions checked_options() {
    FenOptions o;
    o.check_invariants = true;
    o.stats = &pipeline_stats;
    return o;
}

Outcome ac1() {
    Outcome o;
    Graph g = fixture_g_im();
    for (int k : {2, 3, 4}) {
        auto b = brute_force_b_coloring(g, k);
        auto t = solve_twdp(g, k);
        bool want = k != 3;
        if (b.has_value() != want || t.has_value() != want) o.fail("wrong answer at k=" + std::to_string(k));
        if (!verified(g, b, k) || !verified(g, t, k)) o.fail("witness fails at k=" + std::to_string(k));
    }
    return o;
}

Outcome ac2() {
    Outcome o;
    Rng rng(2024);
    long long yes = 0, runs = 0;
    for (int it = 0; it < 500; ++it) {
        const int n = uniform_int(rng, 1, 10);
        Graph g = it % 2 == 0 ? random_graph(n, 0.2 + 0.6 * uniform_int(rng, 0, 10) / 10.0, rng)
                              : random_fen_graph(n, uniform_int(rng, 0, std::min(5, n * (n - 1) / 2 - (n - 1))), rng);
        for (int k = 1; k <= n; ++k) {
            auto b = brute_force_b_coloring(g, k);
            auto t = solve_twdp(g, k);
            auto f = solve_fen(g, k, checked_options());
            ++runs;
            yes += b.has_value();
            if (b.has_value() != t.has_value() || b.has_value() != f.has_value())
                o.fail("disagreement on instance " + std::to_string(it) + " k=" + std::to_string(k));
            if (!verified(g, b, k) || !verified(g, t, k) || !verified(g, f, k))
                o.fail("unverified witness on instance " + std::to_string(it));
        }
    }
    o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(runs) + " runs, " + std::to_string(yes) + " yes";
    return o;
}

Outcome ac3() {
    Outcome o;
    Rng rng(3033);
    long long runs = 0, yes = 0;
    for (int it = 0; it < 300; ++it) {
        const int s = uniform_int(rng, 0, 2);
        const int core = uniform_int(rng, 1, 11 - s);
        const int parts = uniform_int(rng, 1, core);
        std::vector<int> sizes(parts, 1);
        for (int i = parts; i < core; ++i) ++sizes[uniform_int(rng, 0, parts - 1)];
        Graph g = random_cocluster_graph(sizes, s, 0.5, rng);
        for (int k = 1; k <= g.n(); ++k) {
            auto b = brute_force_b_coloring(g, k);
            auto c = solve_cocluster(g, k);
            ++runs;
            yes += b.has_value();
            if (b.has_value() != c.has_value())
                o.fail("disagreement on instance " + std::to_string(it) + " k=" + std::to_string(k));
            if (!verified(g, c, k)) o.fail("unverified witness on instance " + std::to_string(it));
        }
    }
    o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(runs) + " runs, " + std::to_string(yes) + " yes";
    return o;
}

Outcome ac4() {
    Outcome o;
    Rng rng(4044);
    int pivoted = 0, total = 0;
    for (int it = 0; it < 50; ++it) {
        Graph t = it == 0 ? pivoted_tree(18) : it == 1 ? pivoted_tree(18, true) : pivoted_tree_variant(18, it % 2, rng);
        if (m_degree(t) != 18) {
            o.fail("tree " + std::to_string(it) + " has m-degree " + std::to_string(m_degree(t)));
            continue;
        }
        const bool piv = pivoted_tree_report(t).pivoted;
        auto c = solve_fen(t, 18, checked_options());
        ++total;
        pivoted += piv;
        if (c.has_value() == piv) o.fail("tree " + std::to_string(it) + " answered " + (c ? "yes" : "no"));
        if (!verified(t, c, 18)) o.fail("unverified witness on tree " + std::to_string(it));
    }
    o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(total) + " trees, " + std::to_string(pivoted) +
                " pivoted";
    return o;
}

Outcome ac5() {
    Outcome o;
    Rng rng(5055);
    for (int it = 0; it < 200; ++it) {
        const int n = uniform_int(rng, 1, 60);
        const int extra = uniform_int(rng, 0, std::min(5, n * (n - 1) / 2 - (n - 1)));
        Graph g = random_fen_graph(n, extra, rng);
        const int pg = feedback_edge_number(g);
        auto core = compute_fen_core(g);
        if (auto why = validate_fen_core(g, core); !why.empty()) o.fail("graph " + std::to_string(it) + ": " + why);
        if (core.p > 32 * pg) o.fail("graph " + std::to_string(it) + ": |S| too large");
        std::vector<Edge> kept;
        for (auto [a, b] : g.edges())
            if (!(core.in_S[a] && core.in_S[b])) kept.emplace_back(a, b);
        if (!oracle::acyclic(n, kept)) o.fail("graph " + std::to_string(it) + ": a cycle avoids G[S]");
        for (const auto& path : core.outer_paths)
            if (path.size() < 8) o.fail("graph " + std::to_string(it) + ": short outer path");
        for (Vertex v = 0; v < n; ++v)
            if (!core.in_S[v] && count_paths_to_S(g, core.in_S, v) > 2)
                o.fail("graph " + std::to_string(it) + ": three paths to S");
    }
    return o;
}

Outcome ac6() {
    Outcome o;
    const auto& st = pipeline_stats;
    if (st.violations > 0) o.fail(std::to_string(st.violations) + " violations, first: " + st.messages.front());
    if (st.invariant_checks == 0) o.fail("no invariant was checked");
    o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(st.profiles) + " profiles, " +
                std::to_string(st.plans) + " plans, " + std::to_string(st.invariant_checks) + " checks, " +
                std::to_string(st.exhaustive_pivot_checks) + " exhaustive pivot checks, " +
                std::to_string(st.fallback_uses) + " fallback searches";
    return o;
}

Outcome ac7() {
    Outcome o;
    Rng rng(7077);
    long long runs = 0;
    auto check_all = [&](const Graph& g, int k, const std::string& what) {
        auto expect_yes = [&](const char* solver, const std::function<std::optional<PartialColoring>()>& f) {
            std::optional<PartialColoring> c;
            try {
                c = f();
            } catch (const InstanceTooLarge&) {
                return;
            } catch (const CapExceeded&) {
                return;
            } catch (const StateBudgetExceeded&) {
                return;
            }
            ++runs;
            if (!c) o.fail(std::string(solver) + " says no on " + what);
            else if (!verified(g, c, k)) o.fail(std::string(solver) + " witness fails on " + what);
        };
        if (g.n() <= default_brute_cap) expect_yes("brute", [&] { return brute_force_b_coloring(g, k); });
        expect_yes("twdp", [&] { return solve_twdp(g, k); });
        expect_yes("fen", [&] { return solve_fen(g, k); });
        expect_yes("cocluster", [&] {
            CoclusterOptions co;
            co.modulator_cap = co.cap;
            return solve_cocluster(g, k, co);
        });
    };
    for (int it = 0; it < 100; ++it) {
        const int k = uniform_int(rng, 2, 6);
        auto in = planted_instance(k, uniform_int(rng, 0, 6), 0.4, rng);
        if (!verified(in.g, in.witness, k)) o.fail("planted witness invalid");
        check_all(in.g, k, "planted #" + std::to_string(it));
    }
    for (int it = 0; it < 100; ++it) {
        const int k = uniform_int(rng, 6, 18);
        Graph t = pivoted_tree_variant(k, true, rng);
        check_all(t, k, "unpivoted tree #" + std::to_string(it));
    }
    for (int it = 0; it < 100; ++it) {
        Graph t = random_tree(uniform_int(rng, 1, 14), rng);
        check_all(t, b_chromatic_tree(t), "random tree #" + std::to_string(it));
    }
    o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(runs) + " solver runs";
    return o;
}

Outcome ac8() {
    Outcome o;
    Rng rng(8088);
    for (int it = 0; it < 200; ++it) {
        const int n = uniform_int(rng, 1, 40);
        Graph g = random_graph(n, 0.05 + 0.5 * uniform_int(rng, 0, 10) / 10.0, rng);
        // random proper start: random order, random allowed color among [1, n]
        std::vector<int> order(n);
        for (int i = 0; i < n; ++i) order[i] = i;
        shuffle_vec(order, rng);
        std::vector<int> col(n, 0);
        for (int v : order) {
            std::vector<int> allowed;
            for (int c = 1; c <= n; ++c) {
                bool ok = true;
                for (int w : g.neighbors(v)) ok = ok && col[w] != c;
                if (ok) allowed.push_back(c);
            }
            col[v] = allowed[uniform_int(rng, 0, std::min<int>(static_cast<int>(allowed.size()) - 1, 3))];
        }
        int used = 0;
        std::vector<char> present(n + 1, 0);
        for (int c : col) present[c] = 1;
        std::vector<int> rename(n + 1, 0);
        for (int c = 1; c <= n; ++c)
            if (present[c]) rename[c] = ++used;
        PartialColoring start(n, std::max(used, 1));
        for (int v = 0; v < n; ++v) start.set(v, rename[col[v]]);
        auto out = heuristic_descent(g, start);
        const int k2 = out.k();
        if (k2 < 1 || k2 > used) o.fail("color count out of range on graph " + std::to_string(it));
        if (!oracle::is_b_coloring(g, oracle::to_vec(out), k2))
            o.fail("descent result is not a b-coloring on graph " + std::to_string(it));
    }
    return o;
}

Outcome ac9() {
    Outcome o;
    for (int seed = 0; seed < 300; ++seed) {
        Rng rng(static_cast<std::uint64_t>(9000 + seed));
        Graph t = random_tree(uniform_int(rng, 1, 12), rng);
        if (b_chromatic_tree(t) != b_chromatic_brute(t)) o.fail("mismatch at seed " + std::to_string(seed));
    }
    return o;
}

}  // namespace

int main() {
    report(1, "footnote-1 graph: yes at 2 and 4, no at 3", 1, ac1);
    report(2, "small k: fen = twdp = brute, n <= 10", 300, ac2);
    report(3, "co-cluster solver = brute, |S| <= 2", 300, ac3);
    report(4, "pivoted / unpivoted trees at k = 18", 120, ac4);
    report(5, "fen-core structural bounds", 60, ac5);
    report(6, "pipeline invariants (criteria 2 and 4)", 0, ac6);
    report(7, "planted-yes completeness", 120, ac7);
    report(8, "heuristic descent fixpoint", 60, ac8);
    report(9, "tree formula = brute force, n <= 12", 120, ac9);
    std::printf("%s: %d of 9 criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
