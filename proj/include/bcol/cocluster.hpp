#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coloring.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "primitives.hpp"
#include "verify.hpp"

namespace bcol {

// ---------------------------------------------------------------------------
// Cluster modulator: exact branching on induced P3s.

namespace detail {

// Some induced path a-b-c among alive vertices, or nullopt.
inline std::optional<std::array<Vertex, 3>> find_induced_p3(const Graph& g, const std::vector<bool>& alive) {
    for (Vertex b = 0; b < g.n(); ++b) {
        if (!alive[b]) continue;
        auto nb = g.neighbors(b);
        for (std::size_t i = 0; i < nb.size(); ++i) {
            if (!alive[nb[i]]) continue;
            for (std::size_t j = i + 1; j < nb.size(); ++j)
                if (alive[nb[j]] && !g.has_edge(nb[i], nb[j])) return std::array<Vertex, 3>{nb[i], b, nb[j]};
        }
    }
    return std::nullopt;
}

inline bool cluster_branch(const Graph& g, std::vector<bool>& alive, int budget, VertexSet& del) {
    auto p3 = find_induced_p3(g, alive);
    if (!p3) return true;
    if (budget == 0) return false;
    for (Vertex x : *p3) {
        alive[x] = false;
        del.push_back(x);
        if (cluster_branch(g, alive, budget - 1, del)) return true;
        del.pop_back();
        alive[x] = true;
    }
    return false;
}

}  // namespace detail

// A minimum set S with |S| <= budget such that G - S is a disjoint union of
// cliques; nullopt if none that small exists.
inline std::optional<VertexSet> cluster_modulator(const Graph& g, int budget) {
    for (int d = 0; d <= budget; ++d) {
        std::vector<bool> alive(g.n(), true);
        VertexSet del;
        if (detail::cluster_branch(g, alive, d, del)) {
            std::sort(del.begin(), del.end());
            return del;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Decomposition and types. Subsets of S are bitmasks over positions in S.

using SubsetMask = std::uint64_t;

// Nonzero entries (vertex-type, capped count), sorted by vertex-type.
struct SetType {
    std::vector<std::pair<SubsetMask, int>> entries;

    int operator()(SubsetMask a) const {
        auto it = std::lower_bound(entries.begin(), entries.end(), std::pair<SubsetMask, int>{a, 0});
        return it != entries.end() && it->first == a ? it->second : 0;
    }
    friend auto operator<=>(const SetType&, const SetType&) = default;
};

struct CoclusterDecomposition {
    VertexSet S;
    std::vector<VertexSet> parts;   // maximal independent sets of G - S, by smallest vertex
    int p = 0;                      // min(|S|, k)
    std::vector<int> part_of;       // -1 on S
    std::vector<SubsetMask> vtype;  // N^S(v) for v outside S
    std::vector<SetType> ptype;     // set-type of each part
};

inline constexpr int default_cocluster_cap = 4;
inline constexpr int default_modulator_cap = 12;

inline SubsetMask vertex_type_of(const Graph& g, Vertex v, const VertexSet& S) {
    SubsetMask a = 0;
    for (std::size_t j = 0; j < S.size(); ++j)
        if (g.has_edge(v, S[j])) a |= SubsetMask{1} << j;
    return a;
}

inline SetType set_type_of(const Graph& g, const VertexSet& U, const VertexSet& S, int p) {
    std::vector<SubsetMask> ts;
    for (Vertex u : U) ts.push_back(vertex_type_of(g, u, S));
    std::sort(ts.begin(), ts.end());
    SetType t;
    for (std::size_t i = 0; i < ts.size();) {
        std::size_t j = i;
        while (j < ts.size() && ts[j] == ts[i]) ++j;
        t.entries.emplace_back(ts[i], std::min<int>(p + 1, static_cast<int>(j - i)));
        i = j;
    }
    return t;
}

// Decomposition around a fixed modulator (G - S must be complete multipartite).
inline CoclusterDecomposition cocluster_decomposition_with(const Graph& g, VertexSet S, int k) {
    if (S.size() > 63) throw CapExceeded("co-cluster modulator larger than 63");
    CoclusterDecomposition d;
    d.S = std::move(S);
    d.p = std::min<int>(static_cast<int>(d.S.size()), k);
    std::vector<bool> keep(g.n(), true);
    for (Vertex s : d.S) keep[s] = false;
    std::vector<Vertex> rest;
    for (Vertex v = 0; v < g.n(); ++v)
        if (keep[v]) rest.push_back(v);
    Graph co = complement(g.induced(rest));
    d.part_of.assign(g.n(), -1);
    d.vtype.assign(g.n(), 0);
    for (const auto& comp : connected_components(co)) {
        VertexSet part;
        for (Vertex x : comp) part.push_back(rest[x]);
        for (std::size_t i = 0; i < part.size(); ++i)
            for (std::size_t j = i + 1; j < part.size(); ++j)
                if (g.has_edge(part[i], part[j]))
                    throw PreconditionViolated("G - S is not complete multipartite");
        for (Vertex v : part) d.part_of[v] = static_cast<int>(d.parts.size());
        d.parts.push_back(std::move(part));
    }
    for (Vertex v = 0; v < g.n(); ++v)
        if (keep[v]) d.vtype[v] = vertex_type_of(g, v, d.S);
    for (const auto& U : d.parts) d.ptype.push_back(set_type_of(g, U, d.S, d.p));
    return d;
}

// Minimum co-cluster modulator via the cluster modulator of the complement.
inline CoclusterDecomposition cocluster_decomposition(const Graph& g, int k,
                                                      int modulator_cap = default_modulator_cap) {
    auto S = cluster_modulator(complement(g), modulator_cap);
    if (!S) throw CapExceeded("co-cluster modulator exceeds " + std::to_string(modulator_cap));
    return cocluster_decomposition_with(g, std::move(*S), k);
}

// ---------------------------------------------------------------------------
// Signatures.

struct Signature {
    std::vector<Color> chi;                 // per position in S, values in [1, p]
    int q = 0;
    std::vector<SetType> tau;               // tau[i-1]
    std::vector<int> lambda;                // lambda[c-1] in [0, q]
    std::vector<std::vector<SubsetMask>> xi;  // xi[c-1], sorted
    friend bool operator==(const Signature&, const Signature&) = default;
};

// Property checks 1-3, plus properness of chi on G[S].
inline bool is_signature(const Graph& g, const CoclusterDecomposition& d, const Signature& s) {
    const int p = d.p;
    if (static_cast<int>(s.chi.size()) != static_cast<int>(d.S.size())) return false;
    if (s.q < 0 || s.q > p || static_cast<int>(s.tau.size()) != s.q) return false;
    if (static_cast<int>(s.lambda.size()) != p || static_cast<int>(s.xi.size()) != p) return false;
    for (std::size_t a = 0; a < d.S.size(); ++a) {
        if (s.chi[a] < 1 || s.chi[a] > p) return false;
        for (std::size_t b = a + 1; b < d.S.size(); ++b)
            if (s.chi[a] == s.chi[b] && g.has_edge(d.S[a], d.S[b])) return false;
    }
    std::vector<bool> hit(s.q + 1, false);
    for (int l : s.lambda) {
        if (l < 0 || l > s.q) return false;
        hit[l] = true;
    }
    for (int i = 1; i <= s.q; ++i)
        if (!hit[i]) return false;
    for (const auto& t : s.tau) {
        auto need = std::count(s.tau.begin(), s.tau.end(), t);
        if (need > std::count(d.ptype.begin(), d.ptype.end(), t)) return false;
    }
    for (int i = 1; i <= s.q; ++i) {
        std::vector<SubsetMask> seen;
        for (int c = 0; c < p; ++c)
            if (s.lambda[c] == i) seen.insert(seen.end(), s.xi[c].begin(), s.xi[c].end());
        std::sort(seen.begin(), seen.end());
        for (std::size_t a = 0; a < seen.size();) {
            std::size_t b = a;
            while (b < seen.size() && seen[b] == seen[a]) ++b;
            if (static_cast<int>(b - a) > s.tau[i - 1](seen[a])) return false;
            a = b;
        }
    }
    return true;
}

struct SignatureOptions {
    // Restrict to tuples some partial coloring can have: xi(c) is empty iff
    // lambda(c) = 0. Without it, xi(c) ranges over all families of subsets of
    // S when lambda(c) = 0, which is only tractable for tiny S.
    bool realizable_only = true;
    // Quotient by renaming colors (chi in first-appearance form) and by
    // renumbering the chosen parts (first use by lambda in increasing order).
    bool canonical = true;
    int cap = default_cocluster_cap;
};

// Calls `fn` on every signature; stops early when it returns false.
// Returns false iff stopped early.
inline bool for_each_signature(const Graph& g, const CoclusterDecomposition& d,
                               const std::function<bool(const Signature&)>& fn,
                               const SignatureOptions& opt = {}) {
    const int p = d.p;
    const int s = static_cast<int>(d.S.size());
    if (p > opt.cap) throw CapExceeded("co-cluster parameter p = " + std::to_string(p) + " exceeds cap");
    if (!opt.realizable_only && s > 2) throw CapExceeded("raw signature enumeration needs |S| <= 2");

    std::vector<SetType> types = d.ptype;
    std::sort(types.begin(), types.end());
    types.erase(std::unique(types.begin(), types.end()), types.end());
    std::vector<int> avail;
    for (const auto& t : types) avail.push_back(static_cast<int>(std::count(d.ptype.begin(), d.ptype.end(), t)));

    std::vector<SubsetMask> all_subsets;
    for (SubsetMask a = 0; a < (SubsetMask{1} << s); ++a) all_subsets.push_back(a);

    Signature sig;
    sig.chi.assign(s, 0);
    sig.lambda.assign(p, 0);
    sig.xi.assign(p, {});
    std::vector<int> tau_idx;
    bool stop = false;

    // xi for colors c..p; `used[i][A]` counts colors already placing type A in part i.
    std::function<void(int, std::vector<std::vector<std::pair<SubsetMask, int>>>&)> rec_xi =
        [&](int c, auto& used) {
            if (stop) return;
            if (c == p) {
                if (!fn(sig)) stop = true;
                return;
            }
            const int i = sig.lambda[c];
            std::vector<SubsetMask> pool;
            if (i == 0) {
                if (!opt.realizable_only) pool = all_subsets;
            } else {
                for (auto [a, cnt] : sig.tau[i - 1].entries) {
                    int already = 0;
                    for (auto [b, u] : used[i])
                        if (b == a) already = u;
                    if (already < cnt) pool.push_back(a);
                }
            }
            const int m = static_cast<int>(pool.size());
            for (std::uint64_t fam = 0; fam < (std::uint64_t{1} << m) && !stop; ++fam) {
                if (i != 0 && opt.realizable_only && fam == 0) continue;
                std::vector<SubsetMask> chosen;
                for (int b = 0; b < m; ++b)
                    if ((fam >> b) & 1) chosen.push_back(pool[b]);
                sig.xi[c] = chosen;
                if (i != 0) {
                    auto saved = used[i];
                    for (SubsetMask a : chosen) {
                        auto it = std::find_if(used[i].begin(), used[i].end(), [&](auto& e) { return e.first == a; });
                        if (it == used[i].end()) used[i].emplace_back(a, 1);
                        else ++it->second;
                    }
                    rec_xi(c + 1, used);
                    used[i] = std::move(saved);
                } else {
                    rec_xi(c + 1, used);
                }
            }
            sig.xi[c].clear();
        };

    // lambda over colors; `top` = largest part index used so far
    std::function<void(int, int, std::vector<int>&)> rec_lambda = [&](int c, int top, std::vector<int>& cover) {
        if (stop) return;
        if (c == p) {
            for (int i = 1; i <= sig.q; ++i)
                if (cover[i] == 0) return;
            std::vector<std::vector<std::pair<SubsetMask, int>>> used(sig.q + 1);
            rec_xi(0, used);
            return;
        }
        // remaining colors must still be able to cover the unused indices
        int missing = 0;
        for (int i = 1; i <= sig.q; ++i) missing += cover[i] == 0;
        if (missing > p - c) return;
        const int hi = opt.canonical ? std::min(sig.q, top + 1) : sig.q;
        for (int i = 0; i <= hi && !stop; ++i) {
            sig.lambda[c] = i;
            ++cover[i];
            rec_lambda(c + 1, std::max(top, i), cover);
            --cover[i];
        }
        sig.lambda[c] = 0;
    };

    std::function<void(int, std::vector<int>&)> rec_tau = [&](int i, std::vector<int>& left) {
        if (stop) return;
        if (i == sig.q) {
            sig.tau.clear();
            for (int x : tau_idx) sig.tau.push_back(types[x]);
            std::vector<int> cover(sig.q + 1, 0);
            rec_lambda(0, 0, cover);
            return;
        }
        for (int x = 0; x < static_cast<int>(types.size()) && !stop; ++x) {
            if (left[x] == 0) continue;
            --left[x];
            tau_idx.push_back(x);
            rec_tau(i + 1, left);
            tau_idx.pop_back();
            ++left[x];
        }
    };

    std::function<void(int, int)> rec_chi = [&](int a, int top) {
        if (stop) return;
        if (a == s) {
            for (int q = 0; q <= p && !stop; ++q) {
                sig.q = q;
                std::vector<int> left = avail;
                rec_tau(0, left);
            }
            return;
        }
        const int hi = opt.canonical ? std::min(p, top + 1) : p;
        for (int c = 1; c <= hi && !stop; ++c) {
            bool ok = true;
            for (int b = 0; b < a && ok; ++b) ok = !(sig.chi[b] == c && g.has_edge(d.S[a], d.S[b]));
            if (!ok) continue;
            sig.chi[a] = c;
            rec_chi(a + 1, std::max(top, c));
        }
        sig.chi[a] = 0;
    };

    rec_chi(0, 0);
    return !stop;
}

inline std::vector<Signature> enumerate_signatures(const Graph& g, const CoclusterDecomposition& d,
                                                   const SignatureOptions& opt = {}) {
    std::vector<Signature> out;
    for_each_signature(g, d, [&](const Signature& s) { out.push_back(s); return true; }, opt);
    return out;
}

// ---------------------------------------------------------------------------
// Minimal sigma-colorings, candidate subsets, part classification, assembly.

// Lowest-indexed unused part of each required set-type, lowest-indexed
// vertex of each required vertex-type. Colors live in [1, p] within [1, k].
inline PartialColoring minimal_sigma_coloring(const Graph& g, const CoclusterDecomposition& d,
                                              const Signature& s, int k) {
    PartialColoring psi(g.n(), std::max(k, 1));
    for (std::size_t a = 0; a < d.S.size(); ++a) psi.set(d.S[a], s.chi[a]);
    std::vector<int> chosen(s.q, -1);
    std::vector<bool> taken(d.parts.size(), false);
    for (int i = 0; i < s.q; ++i) {
        for (std::size_t u = 0; u < d.parts.size() && chosen[i] < 0; ++u)
            if (!taken[u] && d.ptype[u] == s.tau[i]) {
                chosen[i] = static_cast<int>(u);
                taken[u] = true;
            }
        if (chosen[i] < 0) throw PreconditionViolated("signature needs more parts than exist");
    }
    for (int c = 1; c <= d.p; ++c) {
        const int i = s.lambda[c - 1];
        if (i == 0) continue;
        for (SubsetMask a : s.xi[c - 1]) {
            bool placed = false;
            for (Vertex v : d.parts[chosen[i - 1]])
                if (!psi.has(v) && d.vtype[v] == a) {
                    psi.set(v, c);
                    placed = true;
                    break;
                }
            if (!placed) throw PreconditionViolated("signature needs more vertices of a type than exist");
        }
    }
    return psi;
}

// Calls `fn` on every B with one vertex per color of [p] such that each
// u in B sees all of [p] in chi(N[u]); stops when `fn` returns false.
inline bool for_each_candidate_subset(const Graph& g, const PartialColoring& chi, int p,
                                      const std::function<bool(const VertexSet&)>& fn) {
    std::vector<std::vector<Vertex>> by_color(p + 1);
    for (Vertex v = 0; v < g.n(); ++v) {
        if (!chi[v] || *chi[v] > p) continue;
        std::vector<bool> sees(p + 1, false);
        sees[*chi[v]] = true;
        for (Vertex w : g.neighbors(v))
            if (chi[w] && *chi[w] <= p) sees[*chi[w]] = true;
        if (std::all_of(sees.begin() + 1, sees.end(), [](bool b) { return b; })) by_color[*chi[v]].push_back(v);
    }
    VertexSet B;
    std::function<bool(int)> rec = [&](int c) -> bool {
        if (c > p) {
            VertexSet sorted = B;
            std::sort(sorted.begin(), sorted.end());
            return fn(sorted);
        }
        for (Vertex v : by_color[c]) {
            B.push_back(v);
            bool go = rec(c + 1);
            B.pop_back();
            if (!go) return false;
        }
        return true;
    };
    return rec(1);
}

inline std::vector<VertexSet> candidate_subsets(const Graph& g, const PartialColoring& chi, int p) {
    std::vector<VertexSet> out;
    for_each_candidate_subset(g, chi, p, [&](const VertexSet& b) { out.push_back(b); return true; });
    return out;
}

struct PartFlags {
    bool is_flexible = false;
    bool is_candidate = false;
};

inline PartFlags classify_part(const Graph& g, const CoclusterDecomposition& d, int part,
                               const PartialColoring& chi, const VertexSet& B) {
    const auto& U = d.parts[part];
    const int p = d.p;
    PartFlags f;
    f.is_candidate = std::all_of(B.begin(), B.end(), [&](Vertex b) {
        for (Vertex w : g.neighbors(b))
            if (d.part_of[w] == part && !chi.has(w)) return true;
        return false;
    });
    if (f.is_candidate) {
        f.is_candidate = std::any_of(U.begin(), U.end(), [&](Vertex u) {
            if (chi.has(u)) return false;
            std::vector<bool> sees(p + 1, false);
            for (Vertex w : g.neighbors(u))
                if (chi[w] && *chi[w] <= p) sees[*chi[w]] = true;
            return std::all_of(sees.begin() + 1, sees.end(), [](bool b) { return b; });
        });
    }
    // inside one part, twins are exactly the vertices of equal vertex-type
    f.is_flexible = std::all_of(U.begin(), U.end(), [&](Vertex u) {
        if (chi.has(u)) return true;
        return std::any_of(U.begin(), U.end(), [&](Vertex v) { return chi.has(v) && d.vtype[v] == d.vtype[u]; });
    });
    return f;
}

// Extends chi: the uncolored vertices of the j-th part of C get color p+1+j,
// every other uncolored vertex copies a colored twin in its part.
inline PartialColoring assemble_coloring(const Graph& g, const CoclusterDecomposition& d,
                                         const PartialColoring& chi, const VertexSet& B,
                                         const std::vector<int>& C, int k) {
    const int p = d.p;
    if (static_cast<int>(C.size()) != k - p) throw PreconditionViolated("|C| must equal k - p");
    std::vector<int> label(d.parts.size(), 0);
    for (std::size_t j = 0; j < C.size(); ++j) {
        if (!classify_part(g, d, C[j], chi, B).is_candidate)
            throw PreconditionViolated("part in C is not a candidate");
        label[C[j]] = p + 1 + static_cast<int>(j);
    }
    PartialColoring psi(g.n(), k);
    for (Vertex v = 0; v < g.n(); ++v)
        if (chi[v]) psi.set(v, *chi[v]);
    for (std::size_t u = 0; u < d.parts.size(); ++u) {
        if (label[u] == 0 && !classify_part(g, d, static_cast<int>(u), chi, B).is_flexible)
            throw PreconditionViolated("part outside C is not flexible");
        for (Vertex v : d.parts[u]) {
            if (chi.has(v)) continue;
            if (label[u] != 0) {
                psi.set(v, label[u]);
                continue;
            }
            for (Vertex w : d.parts[u])
                if (chi.has(w) && d.vtype[w] == d.vtype[v]) {
                    psi.set(v, *chi[w]);
                    break;
                }
        }
    }
    return psi;
}

struct CoclusterOptions {
    int cap = default_cocluster_cap;
    int modulator_cap = default_modulator_cap;
};

inline std::optional<PartialColoring> solve_cocluster(const Graph& g, int k, const CoclusterOptions& opt = {}) {
    if (k < 1 || k > g.n()) return std::nullopt;
    const auto d = cocluster_decomposition(g, k, opt.modulator_cap);
    const int p = d.p;
    std::optional<PartialColoring> result;
    SignatureOptions so;
    so.cap = opt.cap;
    for_each_signature(g, d, [&](const Signature& sig) {
        PartialColoring chi = minimal_sigma_coloring(g, d, sig, k);
        if (!chi.proper(g)) return true;
        for_each_candidate_subset(g, chi, p, [&](const VertexSet& B) {
            std::vector<int> c0, c1;
            for (int u = 0; u < static_cast<int>(d.parts.size()); ++u) {
                auto f = classify_part(g, d, u, chi, B);
                if (!f.is_flexible && !f.is_candidate) return true;
                if (f.is_candidate) (f.is_flexible ? c1 : c0).push_back(u);
            }
            const int need = k - p;
            if (static_cast<int>(c0.size()) > need || static_cast<int>(c0.size() + c1.size()) < need) return true;
            std::vector<int> C = c0;
            C.insert(C.end(), c1.begin(), c1.begin() + (need - static_cast<int>(c0.size())));
            std::sort(C.begin(), C.end());
            result = assemble_coloring(g, d, chi, B, C, k);
            return false;
        });
        return !result;
    }, so);
    if (result) BCOL_ENSURE(verify_b_coloring(g, *result, k).is_b_coloring, "cocluster.witness");
    return result;
}

}  // namespace bcol
