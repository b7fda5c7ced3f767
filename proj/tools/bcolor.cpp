// bcolor: command-line front end for the b-coloring solvers.
//
//   bcolor solve  --input G --k K [--algo auto|brute|twdp|fen|cocluster] [--out W] [--json]
//   bcolor gen    tree|pivoted-tree|fen|cocluster|planted [params] [--seed S] [--out F]
//   bcolor fuzz   [--trials N] [--max-n N] [--seed S] [--out DIR] [--json]
//   bcolor params --input G [--json]
//   bcolor verify --input G --coloring C --k K
//
// Exit codes: 0 yes/ok, 1 no/invalid/disagreement, 2 usage or input error,
// 3 internal invariant violation.

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "bcol/cocluster.hpp"
#include "bcol/fen_solver.hpp"
#include "bcol/generators.hpp"
#include "bcol/io.hpp"
#include "bcol/reference.hpp"
#include "bcol/twdp.hpp"
#include "bcol/verify.hpp"

using namespace bcol;
using json = nlohmann::json;

namespace {

enum Exit { kYes = 0, kNo = 1, kUsage = 2, kInternal = 3 };

// ---- logging (BCOLOR_LOG=error|warn|info|debug) ---------------------------

int log_level() {
    static const int level = [] {
        const char* env = std::getenv("BCOLOR_LOG");
        if (!env) return 1;
        std::string s = env;
        if (s == "error") return 0;
        if (s == "warn") return 1;
        if (s == "info") return 2;
        if (s == "debug" || s == "trace") return 3;
        return 1;
    }();
    return level;
}

std::mutex log_mutex;

void log(int level, const std::string& msg) {
    static const char* names[] = {"error", "warn", "info", "debug"};
    if (level > log_level()) return;
    std::lock_guard lock(log_mutex);
    std::cerr << "[bcolor " << names[level] << "] " << msg << '\n';
}

struct Caps {
    int brute = default_brute_cap;
    int cocluster = default_cocluster_cap;
    int modulator = default_modulator_cap;
    std::size_t twdp = default_twdp_budget;
};

void add_caps(CLI::App* app, Caps& caps) {
    app->add_option("--cap-brute", caps.brute, "largest n for brute force")->capture_default_str();
    app->add_option("--cap-cocluster", caps.cocluster, "largest co-cluster modulator for the solver")
        ->capture_default_str();
    app->add_option("--cap-modulator", caps.modulator, "search limit for the co-cluster modulator")
        ->capture_default_str();
    app->add_option("--cap-twdp", caps.twdp, "state budget of the decomposition DP")->capture_default_str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

// Size of a minimum co-cluster modulator, or nullopt when above the cap or
// when the complement is too large to build.
std::optional<int> cocluster_modulator_size(const Graph& g, int cap) {
    if (g.n() > 2000) return std::nullopt;
    auto S = cluster_modulator(complement(g), cap);
    if (!S) return std::nullopt;
    return static_cast<int>(S->size());
}

// ---- solve ------------------------------------------------------------------

struct SolveResult {
    std::optional<PartialColoring> coloring;
    std::string algorithm;
};

SolveResult run_solver(const Graph& g, int k, const std::string& algo, const Caps& caps) {
    auto cocluster = [&] {
        CoclusterOptions o;
        o.cap = caps.cocluster;
        o.modulator_cap = caps.modulator;
        return solve_cocluster(g, k, o);
    };
    if (algo == "brute") return {brute_force_b_coloring(g, k, caps.brute), algo};
    if (algo == "twdp") return {solve_twdp(g, k, caps.twdp), algo};
    if (algo == "cocluster") return {cocluster(), algo};
    if (algo == "fen") {
        FenOptions o;
        o.twdp_budget = caps.twdp;
        return {solve_fen(g, k, o), algo};
    }
    // auto: the profile pipeline when k is large relative to fen, then the
    // decomposition DP, then co-cluster, then brute force
    const int fen = feedback_edge_number(g);
    if (k >= fen_threshold(fen)) {
        log(2, "auto: k >= 96 fen + 18, using the fen pipeline");
        return {solve_fen(g, k), "fen"};
    }
    try {
        return {solve_twdp(g, k, caps.twdp), "twdp"};
    } catch (const StateBudgetExceeded& e) {
        log(2, std::string("auto: ") + e.what());
    }
    if (auto mod = cocluster_modulator_size(g, caps.modulator); mod && *mod <= caps.cocluster) {
        log(2, "auto: co-cluster modulator of size " + std::to_string(*mod));
        return {cocluster(), "cocluster"};
    }
    if (g.n() <= caps.brute) return {brute_force_b_coloring(g, k, caps.brute), "brute"};
    throw InstanceTooLarge("no solver applies within the caps (raise --cap-twdp or --cap-brute)");
}

int cmd_solve(const std::string& input, int k, const std::string& algo, const std::string& out_path, bool as_json,
              const Caps& caps) {
    Graph g = read_graph_file(input);
    auto t0 = std::chrono::steady_clock::now();
    SolveResult r = run_solver(g, k, algo, caps);
    const double secs = seconds_since(t0);
    if (r.coloring) {
        auto rep = verify_b_coloring(g, *r.coloring, k);
        BCOL_ENSURE(rep.is_b_coloring, "cli.witness-verifies");
        if (!out_path.empty()) write_file(out_path, format_coloring(*r.coloring));
    }
    const bool yes = r.coloring.has_value();
    if (as_json) {
        json j;
        j["answer"] = yes ? "yes" : "no";
        j["k"] = k;
        j["algorithm"] = r.algorithm;
        j["n"] = g.n();
        j["m"] = g.m();
        j["fen"] = feedback_edge_number(g);
        j["m_degree"] = m_degree(g);
        j["time_s"] = secs;
        j["witness"] = yes && !out_path.empty() ? json(out_path) : json(nullptr);
        if (yes && out_path.empty()) {
            std::vector<int> col;
            for (Vertex v = 0; v < g.n(); ++v) col.push_back(*(*r.coloring)[v]);
            j["coloring"] = col;
        }
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "answer:    " << (yes ? "yes" : "no") << '\n'
                  << "k:         " << k << '\n'
                  << "algorithm: " << r.algorithm << '\n'
                  << "n, m:      " << g.n() << ", " << g.m() << '\n'
                  << "fen:       " << feedback_edge_number(g) << '\n'
                  << "m-degree:  " << m_degree(g) << '\n'
                  << "time:      " << secs << " s\n";
        if (yes) {
            if (!out_path.empty()) std::cout << "witness:   " << out_path << '\n';
            else std::cout << format_coloring(*r.coloring);
        }
    }
    return yes ? kYes : kNo;
}

// ---- gen ------------------------------------------------------------------

struct GenParams {
    std::string kind;
    int n = 20, k = 4, extra = 0, parts = 3, modulator = 2;
    double density = 0.3;
    bool unpivot = false, variant = false;
    std::uint64_t seed = 1;
    std::string out, witness;
};

int cmd_gen(const GenParams& p) {
    Rng rng(p.seed);
    Graph g;
    std::optional<PartialColoring> witness;
    std::string comment = "bcolor gen " + p.kind + " seed " + std::to_string(p.seed);
    if (p.kind == "tree") {
        if (p.n < 1) throw PreconditionViolated("--n must be >= 1");
        g = random_tree(p.n, rng);
    } else if (p.kind == "pivoted-tree") {
        g = p.variant ? pivoted_tree_variant(p.k, p.unpivot, rng) : pivoted_tree(p.k, p.unpivot);
    } else if (p.kind == "fen") {
        if (p.n < 1 || p.extra < 0) throw PreconditionViolated("need --n >= 1 and --extra >= 0");
        if (static_cast<long long>(p.n) * (p.n - 1) / 2 < p.n - 1 + p.extra)
            throw PreconditionViolated("too many extra edges for n");
        g = random_fen_graph(p.n, p.extra, rng);
    } else if (p.kind == "cocluster") {
        if (p.parts < 1 || p.n < p.parts || p.modulator < 0) throw PreconditionViolated("need n >= parts >= 1");
        std::vector<int> sizes(p.parts, 1);
        for (int i = p.parts; i < p.n; ++i) ++sizes[uniform_int(rng, 0, p.parts - 1)];
        g = random_cocluster_graph(sizes, p.modulator, p.density, rng);
    } else if (p.kind == "planted") {
        if (p.k < 1) throw PreconditionViolated("--k must be >= 1");
        auto in = planted_instance(p.k, p.extra, p.density, rng);
        g = in.g;
        witness = in.witness;
    } else {
        throw PreconditionViolated("unknown generator kind '" + p.kind + "'");
    }
    const std::string text = format_graph(g, comment);
    if (p.out.empty()) std::cout << text;
    else write_file(p.out, text);
    if (witness) {
        std::string wpath = !p.witness.empty() ? p.witness : (!p.out.empty() ? p.out + ".witness" : "");
        if (!wpath.empty()) write_file(wpath, format_coloring(*witness));
        else std::cerr << format_coloring(*witness);
        log(2, "planted witness with k = " + std::to_string(witness->k()));
    }
    log(2, "generated n = " + std::to_string(g.n()) + ", m = " + std::to_string(g.m()));
    return kYes;
}

// ---- params ----------------------------------------------------------------

int cmd_params(const std::string& input, bool as_json, const Caps& caps) {
    Graph g = read_graph_file(input);
    const int fen = feedback_edge_number(g);
    const auto core = compute_fen_core(g);
    const auto mod = cocluster_modulator_size(g, caps.modulator);
    if (as_json) {
        json j{{"n", g.n()},           {"m", g.m()},
               {"fen", fen},           {"m_degree", m_degree(g)},
               {"fen_core", core.p},   {"cocluster_modulator", mod ? json(*mod) : json(nullptr)}};
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "n=" << g.n() << '\n'
                  << "m=" << g.m() << '\n'
                  << "fen=" << fen << '\n'
                  << "m-degree=" << m_degree(g) << '\n'
                  << "fen-core=" << core.p << '\n'
                  << "cocluster-modulator="
                  << (mod ? std::to_string(*mod) : "> " + std::to_string(caps.modulator)) << '\n';
    }
    return kYes;
}

// ---- verify ------------------------------------------------------------------

int cmd_verify(const std::string& input, const std::string& coloring, int k) {
    Graph g = read_graph_file(input);
    std::ifstream in(coloring);
    if (!in) throw Error("cannot read " + coloring);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    PartialColoring c;
    try {
        c = parse_coloring(text, g.n());
    } catch (const ParseError& e) {
        std::cout << "invalid: " << e.what() << '\n';
        return kNo;
    }
    if (c.k() != k) {
        std::cout << "invalid: file declares k = " << c.k() << ", expected " << k << '\n';
        return kNo;
    }
    auto rep = verify_b_coloring(g, c, k);
    if (rep.is_b_coloring) {
        std::cout << "valid " << k << "-b-coloring\n";
        return kYes;
    }
    std::cout << "invalid:";
    for (const auto& v : rep.violations) std::cout << "\n  " << v;
    std::cout << '\n';
    return kNo;
}

// ---- fuzz --------------------------------------------------------------------

struct Verdict {
    std::string solver;
    std::optional<bool> yes;  // nullopt: skipped (cap)
    bool witness_ok = true;
    std::string error;
};

std::vector<Verdict> judge(const Graph& g, int k, const Caps& caps) {
    std::vector<Verdict> out;
    auto run = [&](const std::string& name, auto&& f) {
        Verdict v{name, std::nullopt, true, {}};
        try {
            auto c = f();
            v.yes = c.has_value();
            if (c) v.witness_ok = verify_b_coloring(g, *c, k).is_b_coloring;
        } catch (const InstanceTooLarge&) {
        } catch (const CapExceeded&) {
        } catch (const StateBudgetExceeded&) {
        } catch (const std::exception& e) {
            v.error = e.what();
        }
        out.push_back(v);
    };
    run("brute", [&] { return brute_force_b_coloring(g, k, caps.brute); });
    run("twdp", [&] { return solve_twdp(g, k, caps.twdp); });
    run("fen", [&] {
        FenOptions o;
        o.twdp_budget = caps.twdp;
        return solve_fen(g, k, o);
    });
    run("cocluster", [&] {
        CoclusterOptions o;
        o.cap = caps.cocluster;
        o.modulator_cap = std::min(caps.modulator, 4);
        return solve_cocluster(g, k, o);
    });
    return out;
}

bool disagrees(const std::vector<Verdict>& vs) {
    std::optional<bool> ref;
    for (const auto& v : vs) {
        if (!v.error.empty() || !v.witness_ok) return true;
        if (!v.yes) continue;
        if (ref && *ref != *v.yes) return true;
        ref = v.yes;
    }
    return false;
}

Graph drop_vertex(const Graph& g, Vertex x) {
    std::vector<Vertex> keep;
    for (Vertex v = 0; v < g.n(); ++v)
        if (v != x) keep.push_back(v);
    return g.induced(keep);
}

Graph drop_edge(const Graph& g, std::size_t i) {
    auto es = g.edges();
    es.erase(es.begin() + static_cast<std::ptrdiff_t>(i));
    return Graph(g.n(), es);
}

// Greedy vertex- then edge-deletion keeping the disagreement alive.
std::pair<Graph, int> minimize(Graph g, int k, const Caps& caps) {
    bool progress = true;
    while (progress) {
        progress = false;
        for (Vertex x = 0; x < g.n() && g.n() > 1; ++x) {
            Graph h = drop_vertex(g, x);
            if (k <= h.n() && disagrees(judge(h, k, caps))) {
                g = std::move(h);
                progress = true;
                break;
            }
        }
        if (progress) continue;
        for (std::size_t i = 0; i < g.m(); ++i) {
            Graph h = drop_edge(g, i);
            if (disagrees(judge(h, k, caps))) {
                g = std::move(h);
                progress = true;
                break;
            }
        }
    }
    return {g, k};
}

json verdicts_json(const std::vector<Verdict>& vs) {
    json arr = json::array();
    for (const auto& v : vs)
        arr.push_back({{"solver", v.solver},
                       {"answer", v.yes ? json(*v.yes ? "yes" : "no") : json("skipped")},
                       {"witness_ok", v.witness_ok},
                       {"error", v.error}});
    return arr;
}

json graph_json(const Graph& g) {
    json es = json::array();
    for (auto [u, v] : g.edges()) es.push_back({u + 1, v + 1});
    return {{"n", g.n()}, {"edges", es}};
}

// Trial instance: a mix of dense random, sparse fen and co-cluster graphs.
Graph fuzz_graph(Rng& rng, int max_n) {
    const int n = uniform_int(rng, 0, std::max(0, max_n));
    if (n <= 1) return Graph(n);
    switch (uniform_int(rng, 0, 2)) {
        case 0:
            return random_graph(n, 0.15 + 0.7 * static_cast<double>(uniform_int(rng, 0, 100)) / 100.0, rng);
        case 1:
            return random_fen_graph(n, uniform_int(rng, 0, std::min(4, n * (n - 1) / 2 - (n - 1))), rng);
        default: {
            int s = uniform_int(rng, 0, std::min(2, n - 1));
            int core = n - s, parts = uniform_int(rng, 1, core);
            std::vector<int> sizes(parts, 1);
            for (int i = parts; i < core; ++i) ++sizes[uniform_int(rng, 0, parts - 1)];
            return random_cocluster_graph(sizes, s, 0.5, rng);
        }
    }
}

int cmd_fuzz(int trials, int max_n, std::uint64_t seed, const std::string& out_dir, bool as_json,
             const Caps& caps) {
    if (max_n > caps.brute) throw PreconditionViolated("--max-n exceeds the brute-force cap");
    std::atomic<int> next{0}, yes_count{0}, failures{0};
    std::mutex mu;
    json dumps = json::array();
    auto worker = [&] {
        for (int t; (t = next++) < trials;) {
            Rng rng(seed * 1000003ULL + static_cast<std::uint64_t>(t));
            Graph g = fuzz_graph(rng, max_n);
            int k = g.n() >= 1 ? uniform_int(rng, 1, g.n()) : 1;
            auto vs = judge(g, k, caps);
            if (!vs.empty() && vs[0].yes && *vs[0].yes) ++yes_count;
            if (!disagrees(vs)) continue;
            ++failures;
            auto [mg, mk] = minimize(g, k, caps);
            json d{{"trial", t},
                   {"seed", seed},
                   {"k", k},
                   {"instance", graph_json(g)},
                   {"verdicts", verdicts_json(vs)},
                   {"minimized", graph_json(mg)},
                   {"minimized_verdicts", verdicts_json(judge(mg, mk, caps))}};
            log(0, "disagreement in trial " + std::to_string(t));
            std::lock_guard lock(mu);
            if (!out_dir.empty()) write_file(out_dir + "/fuzz-trial-" + std::to_string(t) + ".json", d.dump(2));
            dumps.push_back(std::move(d));
        }
    };
    const unsigned threads = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (as_json) {
        std::cout << json{{"trials", trials},
                          {"max_n", max_n},
                          {"seed", seed},
                          {"yes", yes_count.load()},
                          {"disagreements", failures.load()},
                          {"failures", dumps}}
                         .dump(2)
                  << '\n';
    } else {
        std::cout << "trials:        " << trials << '\n'
                  << "yes instances: " << yes_count << '\n'
                  << "disagreements: " << failures << '\n';
        for (const auto& d : dumps) std::cout << d.dump() << '\n';
    }
    return failures == 0 ? kYes : kNo;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"b-coloring solvers"};
    app.require_subcommand(1);
    Caps caps;

    std::string input, out, coloring, algo = "auto";
    int k = 0;
    bool as_json = false;

    auto* solve = app.add_subcommand("solve", "decide whether a k-b-coloring exists");
    solve->add_option("--input", input, "graph file")->required()->check(CLI::ExistingFile);
    solve->add_option("--k", k, "number of colors")->required();
    solve->add_option("--algo", algo, "solver")
        ->check(CLI::IsMember({"auto", "brute", "twdp", "fen", "cocluster"}))
        ->capture_default_str();
    solve->add_option("--out", out, "witness file");
    solve->add_flag("--json", as_json, "JSON report");
    add_caps(solve, caps);

    GenParams gp;
    auto* gen = app.add_subcommand("gen", "generate an instance");
    gen->add_option("kind", gp.kind, "tree | pivoted-tree | fen | cocluster | planted")
        ->required()
        ->check(CLI::IsMember({"tree", "pivoted-tree", "fen", "cocluster", "planted"}));
    gen->add_option("--n", gp.n, "vertices (tree, fen, cocluster core)")->capture_default_str();
    gen->add_option("--k", gp.k, "colors (pivoted-tree, planted)")->capture_default_str();
    gen->add_option("--extra", gp.extra, "extra edges (fen, planted)")->capture_default_str();
    gen->add_option("--parts", gp.parts, "parts (cocluster)")->capture_default_str();
    gen->add_option("--modulator", gp.modulator, "modulator size (cocluster)")->capture_default_str();
    gen->add_option("--density", gp.density, "edge density (cocluster modulator, planted centers)")
        ->capture_default_str();
    gen->add_flag("--unpivot", gp.unpivot, "break the pivot (pivoted-tree)");
    gen->add_flag("--variant", gp.variant, "randomized family member (pivoted-tree)");
    gen->add_option("--seed", gp.seed, "random seed")->capture_default_str();
    gen->add_option("--out", gp.out, "output graph file (default stdout)");
    gen->add_option("--witness", gp.witness, "planted witness file (default <out>.witness)");

    int trials = 500, max_n = 10;
    std::uint64_t seed = 1;
    auto* fuzz = app.add_subcommand("fuzz", "cross-check all solvers on random instances");
    fuzz->add_option("--trials", trials)->capture_default_str();
    fuzz->add_option("--max-n", max_n)->capture_default_str();
    fuzz->add_option("--seed", seed)->capture_default_str();
    fuzz->add_option("--out", out, "directory for failure dumps")->check(CLI::ExistingDirectory);
    fuzz->add_flag("--json", as_json, "JSON summary");
    add_caps(fuzz, caps);

    auto* params = app.add_subcommand("params", "report structural parameters");
    params->add_option("--input", input, "graph file")->required()->check(CLI::ExistingFile);
    params->add_flag("--json", as_json, "JSON report");
    add_caps(params, caps);

    auto* verify = app.add_subcommand("verify", "check a coloring file");
    verify->add_option("--input", input, "graph file")->required()->check(CLI::ExistingFile);
    verify->add_option("--coloring", coloring, "coloring file")->required()->check(CLI::ExistingFile);
    verify->add_option("--k", k, "number of colors")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kYes : kUsage;
    }

    try {
        if (*solve) return cmd_solve(input, k, algo, out, as_json, caps);
        if (*gen) return cmd_gen(gp);
        if (*fuzz) return cmd_fuzz(trials, max_n, seed, out, as_json, caps);
        if (*params) return cmd_params(input, as_json, caps);
        if (*verify) return cmd_verify(input, coloring, k);
    } catch (const InternalInvariantViolation& e) {
        log(0, std::string("internal invariant violation: ") + e.what());
        return kInternal;
    } catch (const std::exception& e) {
        log(0, e.what());
        return kUsage;
    }
    return kUsage;
}
