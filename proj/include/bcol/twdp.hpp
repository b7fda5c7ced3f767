#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "coloring.hpp"
#include "graph.hpp"
#include "primitives.hpp"
#include "tree_decomposition.hpp"
#include "verify.hpp"

namespace bcol {

inline constexpr std::size_t default_twdp_budget = 3'000'000;

namespace detail {

// Nice decomposition: leaf / introduce / forget / binary join, children
// always created before parents.
struct NiceNode {
    enum Kind { Leaf, Introduce, Forget, Join } kind = Leaf;
    Vertex v = -1;     // introduced / forgotten vertex
    int a = -1, b = -1;
    VertexSet bag;
};

inline std::vector<NiceNode> make_nice(const TreeDecomposition& td) {
    std::vector<NiceNode> out;
    const int t = static_cast<int>(td.bags.size());
    if (t == 0) {
        out.push_back({});
        return out;
    }
    auto add = [&](NiceNode nd) {
        out.push_back(std::move(nd));
        return static_cast<int>(out.size()) - 1;
    };
    auto introduce = [&](int x, Vertex v) {
        VertexSet bag = out[x].bag;
        bag.insert(std::upper_bound(bag.begin(), bag.end(), v), v);
        return add({NiceNode::Introduce, v, x, -1, std::move(bag)});
    };
    auto forget = [&](int x, Vertex v) {
        VertexSet bag = out[x].bag;
        bag.erase(std::find(bag.begin(), bag.end(), v));
        return add({NiceNode::Forget, v, x, -1, std::move(bag)});
    };
    std::vector<int> parent(t, -1), order{0};
    std::vector<bool> seen(t, false);
    seen[0] = true;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (int c : td.tree[order[i]])
            if (!seen[c]) {
                seen[c] = true;
                parent[c] = order[i];
                order.push_back(c);
            }
    std::vector<std::vector<int>> kids(t);
    for (int x : order)
        if (parent[x] >= 0) kids[parent[x]].push_back(x);
    std::vector<int> top(t, -1);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const int x = *it;
        const VertexSet& bx = td.bags[x];
        int cur = -1;
        for (int c : kids[x]) {
            int y = top[c];
            for (Vertex v : td.bags[c])
                if (!contains(bx, v)) y = forget(y, v);
            for (Vertex v : bx)
                if (!contains(td.bags[c], v)) y = introduce(y, v);
            cur = cur < 0 ? y : add({NiceNode::Join, -1, cur, y, bx});
        }
        if (cur < 0) {
            cur = add({});
            for (Vertex v : bx) cur = introduce(cur, v);
        }
        top[x] = cur;
    }
    int root = top[0];
    for (Vertex v : td.bags[0]) root = forget(root, v);
    (void)root;
    return out;
}

// DP over bag colorings. Per bag vertex: its color and the colors of its
// already-forgotten neighbours ("seen"), or a dead flag once it provably
// cannot become a useful b-vertex. "done" holds colors with a b-vertex among
// forgotten vertices. States are kept canonical under color permutation.
class TwDp {
public:
    TwDp(const Graph& g, int k, const TreeDecomposition& td, std::size_t budget)
        : g_(g), k_(k), budget_(budget), nodes_(make_nice(td)) {
        all_ = k_ == 64 ? ~0ULL : ((1ULL << k_) - 1);
        for (Vertex v = 0; v < g.n(); ++v) total_hi_ += g.degree(v) >= k_ - 1;
    }

    std::optional<PartialColoring> run() {
        const int N = static_cast<int>(nodes_.size());
        info_.resize(N);
        states_.resize(N);
        for (int x = 0; x < N; ++x) process(x);
        const int root = N - 1;
        for (std::size_t i = 0; i < states_[root].size(); ++i)
            if (states_[root][i].done == all_) return reconstruct(static_cast<int>(i));
        return std::nullopt;
    }

    std::size_t total_states() const { return total_; }

private:
    struct State {
        std::vector<std::uint8_t> col;
        std::vector<std::uint64_t> seen;
        std::uint64_t dead = 0;
        std::uint64_t done = 0;
        // provenance
        int a = -1, b = -1, aux = -1;
        std::vector<std::uint8_t> sigma;  // raw label -> canonical label
        std::vector<std::uint8_t> align;  // join: right-child label -> raw label
    };
    struct Info {
        std::vector<int> fn;  // forgotten-neighbour count per bag position
        int hi = 0;           // vertices of degree >= k-1 introduced in the subtree
    };

    static std::uint64_t bit(int c) { return 1ULL << c; }

    std::uint64_t signature(const State& s, int c) const {
        std::uint64_t sig = (s.done >> c) & 1ULL;
        for (std::size_t i = 0; i < s.col.size(); ++i)
            if (!((s.dead >> i) & 1ULL) && ((s.seen[i] >> c) & 1ULL)) sig |= bit(static_cast<int>(i) + 1);
        return sig;
    }

    static std::uint64_t remap(std::uint64_t mask, const std::vector<std::uint8_t>& p) {
        std::uint64_t out = 0;
        while (mask) {
            int c = std::countr_zero(mask);
            mask &= mask - 1;
            out |= bit(p[c]);
        }
        return out;
    }

    // Applies the exact prunes, canonicalizes, and stores the state at node x.
    void emit(int x, State s) {
        const auto& bag = nodes_[x].bag;
        const Info& inf = info_[x];
        std::uint64_t alive_colors = 0;
        for (std::size_t i = 0; i < bag.size(); ++i) {
            if ((s.dead >> i) & 1ULL) continue;
            const Vertex v = bag[i];
            bool dead = (s.done >> s.col[i]) & 1ULL;
            if (!dead) {
                int potential = std::popcount(s.seen[i] | bit(s.col[i])) + g_.degree(v) - inf.fn[i];
                dead = potential < k_;
            }
            if (dead) {
                s.dead |= bit(static_cast<int>(i));
                s.seen[i] = 0;
            } else {
                alive_colors |= bit(s.col[i]);
            }
        }
        const int missing = std::popcount(all_ & ~s.done & ~alive_colors);
        if (missing > total_hi_ - inf.hi) return;

        // canonical relabeling
        std::vector<std::uint8_t> sigma(k_, 0xFF);
        int next = 0;
        for (std::uint8_t c : s.col)
            if (sigma[c] == 0xFF) sigma[c] = static_cast<std::uint8_t>(next++);
        std::vector<std::pair<std::uint64_t, int>> rest;
        for (int c = 0; c < k_; ++c)
            if (sigma[c] == 0xFF) rest.emplace_back(signature(s, c), c);
        std::sort(rest.begin(), rest.end());
        for (auto [sig, c] : rest) sigma[c] = static_cast<std::uint8_t>(next++);
        for (auto& c : s.col) c = sigma[c];
        for (auto& m : s.seen) m = remap(m, sigma);
        s.done = remap(s.done, sigma);
        s.sigma = std::move(sigma);

        std::string key(reinterpret_cast<const char*>(s.col.data()), s.col.size());
        key.append(reinterpret_cast<const char*>(s.seen.data()), s.seen.size() * 8);
        key.append(reinterpret_cast<const char*>(&s.dead), 8);
        key.append(reinterpret_cast<const char*>(&s.done), 8);
        auto [it, fresh] = index_.try_emplace(std::move(key), static_cast<int>(states_[x].size()));
        if (!fresh) return;
        if (++total_ > budget_)
            throw StateBudgetExceeded("tree-decomposition DP exceeded " + std::to_string(budget_) +
                                      " states");
        states_[x].push_back(std::move(s));
    }

    void process(int x) {
        const NiceNode& nd = nodes_[x];
        Info& inf = info_[x];
        index_.clear();
        switch (nd.kind) {
        case NiceNode::Leaf: {
            emit(x, State{});
            break;
        }
        case NiceNode::Introduce: {
            const auto& cb = nodes_[nd.a].bag;
            const int p = static_cast<int>(std::find(nd.bag.begin(), nd.bag.end(), nd.v) - nd.bag.begin());
            inf.fn = info_[nd.a].fn;
            inf.fn.insert(inf.fn.begin() + p, 0);
            inf.hi = info_[nd.a].hi + (g_.degree(nd.v) >= k_ - 1);
            std::vector<int> nbr_pos;
            for (std::size_t i = 0; i < cb.size(); ++i)
                if (g_.has_edge(nd.v, cb[i])) nbr_pos.push_back(static_cast<int>(i));
            const auto& cs = states_[nd.a];
            for (std::size_t si = 0; si < cs.size(); ++si) {
                const State& s = cs[si];
                int r = 0;
                for (auto c : s.col) r = std::max(r, c + 1);
                std::uint64_t prev_sig = 0;
                for (int c = 0; c < k_; ++c) {
                    if (c >= r) {
                        std::uint64_t sg = signature(s, c);
                        if (c > r && sg == prev_sig) continue;
                        prev_sig = sg;
                    }
                    bool clash = false;
                    for (int i : nbr_pos) clash |= s.col[i] == c;
                    if (clash) continue;
                    State t;
                    t.col = s.col;
                    t.col.insert(t.col.begin() + p, static_cast<std::uint8_t>(c));
                    t.seen = s.seen;
                    t.seen.insert(t.seen.begin() + p, 0);
                    std::uint64_t low = s.dead & (bit(p) - 1), high = s.dead & ~(bit(p) - 1);
                    t.dead = low | (high << 1);
                    t.done = s.done;
                    t.a = static_cast<int>(si);
                    t.aux = c;
                    emit(x, std::move(t));
                }
            }
            break;
        }
        case NiceNode::Forget: {
            const auto& cb = nodes_[nd.a].bag;
            const int p = static_cast<int>(std::find(cb.begin(), cb.end(), nd.v) - cb.begin());
            inf.fn = info_[nd.a].fn;
            inf.hi = info_[nd.a].hi;
            std::vector<int> nbr_pos;
            for (std::size_t i = 0; i < cb.size(); ++i)
                if (g_.has_edge(nd.v, cb[i])) {
                    nbr_pos.push_back(static_cast<int>(i));
                    ++inf.fn[i];
                }
            inf.fn.erase(inf.fn.begin() + p);
            const auto& cs = states_[nd.a];
            for (std::size_t si = 0; si < cs.size(); ++si) {
                const State& s = cs[si];
                State t;
                t.done = s.done;
                const int cv = s.col[p];
                if (!((s.dead >> p) & 1ULL)) {
                    std::uint64_t full = s.seen[p] | bit(cv);
                    for (int i : nbr_pos) full |= bit(s.col[i]);
                    if (full == all_) t.done |= bit(cv);
                }
                t.col = s.col;
                t.seen = s.seen;
                for (int i : nbr_pos)
                    if (!((s.dead >> i) & 1ULL)) t.seen[i] |= bit(cv);
                t.col.erase(t.col.begin() + p);
                t.seen.erase(t.seen.begin() + p);
                std::uint64_t low = s.dead & (bit(p) - 1), high = (s.dead >> 1) & ~(bit(p) - 1);
                t.dead = low | high;
                t.a = static_cast<int>(si);
                emit(x, std::move(t));
            }
            break;
        }
        case NiceNode::Join: {
            const Info &ia = info_[nd.a], &ib = info_[nd.b];
            inf.fn.resize(nd.bag.size());
            int hb = 0;
            for (std::size_t i = 0; i < nd.bag.size(); ++i) {
                inf.fn[i] = ia.fn[i] + ib.fn[i];
                hb += g_.degree(nd.bag[i]) >= k_ - 1;
            }
            inf.hi = ia.hi + ib.hi - hb;
            std::unordered_map<std::string, std::vector<int>> groups;
            const auto& sb = states_[nd.b];
            for (std::size_t j = 0; j < sb.size(); ++j)
                groups[std::string(sb[j].col.begin(), sb[j].col.end())].push_back(static_cast<int>(j));
            const auto& sa = states_[nd.a];
            for (std::size_t i = 0; i < sa.size(); ++i) {
                auto g = groups.find(std::string(sa[i].col.begin(), sa[i].col.end()));
                if (g == groups.end()) continue;
                for (int j : g->second) join_pair(x, static_cast<int>(i), j);
            }
            break;
        }
        }
    }

    // Enumerates alignments of the non-bag colors of the two children up to
    // interchangeable colors (equal signatures).
    void join_pair(int x, int ia, int ib) {
        const NiceNode& nd = nodes_[x];
        const State& A = states_[nd.a][ia];
        const State& B = states_[nd.b][ib];
        int r = 0;
        for (auto c : A.col) r = std::max(r, c + 1);
        std::vector<std::uint64_t> sa, sbv;
        for (int c = r; c < k_; ++c) {
            sa.push_back(signature(A, c));
            sbv.push_back(signature(B, c));
        }
        // classes of B labels: [start, end)
        std::vector<std::pair<int, int>> cls;
        for (int i = 0; i < static_cast<int>(sbv.size());) {
            int j = i;
            while (j < static_cast<int>(sbv.size()) && sbv[j] == sbv[i]) ++j;
            cls.emplace_back(i, j);
            i = j;
        }
        std::vector<int> used(cls.size(), 0);
        std::vector<std::uint8_t> align(k_);
        std::iota(align.begin(), align.begin() + r, 0);
        std::vector<int> chosen(sa.size(), 0);
        auto rec = [&](auto&& self, int ai) -> void {
            if (ai == static_cast<int>(sa.size())) {
                State t;
                t.col = A.col;
                t.dead = A.dead | B.dead;
                t.seen.resize(A.col.size());
                for (std::size_t i = 0; i < A.col.size(); ++i)
                    t.seen[i] = ((t.dead >> i) & 1ULL) ? 0 : (A.seen[i] | remap(B.seen[i], align));
                t.done = A.done | remap(B.done, align);
                t.a = ia;
                t.b = ib;
                t.align = align;
                if (++join_work_ > budget_ * 8)
                    throw StateBudgetExceeded("tree-decomposition DP join work exceeded");
                emit(x, std::move(t));
                return;
            }
            int lo = (ai > 0 && sa[ai] == sa[ai - 1]) ? chosen[ai - 1] : 0;
            for (int j = lo; j < static_cast<int>(cls.size()); ++j) {
                auto [s, e] = cls[j];
                if (s + used[j] >= e) continue;
                align[r + s + used[j]] = static_cast<std::uint8_t>(r + ai);
                ++used[j];
                chosen[ai] = j;
                self(self, ai + 1);
                --used[j];
            }
        };
        rec(rec, 0);
    }

    PartialColoring reconstruct(int root_state) {
        const int N = static_cast<int>(nodes_.size());
        std::vector<int> pick(N, -1);
        std::vector<std::vector<std::uint8_t>> pi(N);
        pick[N - 1] = root_state;
        pi[N - 1].resize(k_);
        std::iota(pi[N - 1].begin(), pi[N - 1].end(), 0);
        PartialColoring out(g_.n(), k_);
        for (int x = N - 1; x >= 0; --x) {
            const NiceNode& nd = nodes_[x];
            if (pick[x] < 0) continue;
            const State& s = states_[x][pick[x]];
            std::vector<std::uint8_t> down(k_);
            for (int y = 0; y < k_; ++y) down[y] = pi[x][s.sigma[y]];
            if (nd.kind == NiceNode::Introduce) out.set(nd.v, down[s.aux] + 1);
            if (nd.kind == NiceNode::Leaf) continue;
            pick[nd.a] = s.a;
            pi[nd.a] = down;
            if (nd.kind == NiceNode::Join) {
                pick[nd.b] = s.b;
                pi[nd.b].resize(k_);
                for (int y = 0; y < k_; ++y) pi[nd.b][y] = down[s.align[y]];
            }
        }
        return out;
    }

    const Graph& g_;
    int k_;
    std::size_t budget_;
    std::vector<NiceNode> nodes_;
    std::uint64_t all_ = 0;
    int total_hi_ = 0;
    std::vector<Info> info_;
    std::vector<std::vector<State>> states_;
    std::unordered_map<std::string, int> index_;
    std::size_t total_ = 0, join_work_ = 0;
};

}  // namespace detail

// Exact decision + witness for "is there a k-b-coloring?" on a valid
// decomposition td of g.
inline std::optional<PartialColoring> solve_twdp(const Graph& g, int k, const TreeDecomposition& td,
                                                 std::size_t budget = default_twdp_budget) {
    if (k < 1 || k > g.n() || k > m_degree(g)) return std::nullopt;
    if (k > 64 || td.width() + 1 > 63)
        throw StateBudgetExceeded("tree-decomposition DP supports k <= 64 and bags <= 63");
    auto c = detail::TwDp(g, k, td, budget).run();
    if (c) BCOL_ENSURE(verify_b_coloring(g, *c, k).is_b_coloring, "twdp.witness");
    return c;
}

inline std::optional<PartialColoring> solve_twdp(const Graph& g, int k,
                                                 std::size_t budget = default_twdp_budget) {
    return solve_twdp(g, k, td_for_graph(g), budget);
}

}  // namespace bcol
