#pragma once

#include <limits>
#include <queue>
#include <utility>
#include <vector>

namespace bcol {

// Maximum bipartite matching (Hopcroft–Karp). Left elements are 0..L-1,
// right elements 0..R-1; adj[l] lists the right neighbors of l.
struct Matching {
    std::vector<int> left_to_right;  // -1 if unmatched
    std::vector<int> right_to_left;
    int size = 0;

    std::vector<std::pair<int, int>> pairs() const {
        std::vector<std::pair<int, int>> out;
        for (int l = 0; l < static_cast<int>(left_to_right.size()); ++l)
            if (left_to_right[l] >= 0) out.emplace_back(l, left_to_right[l]);
        return out;
    }
};

inline Matching max_bipartite_matching(int L, int R, const std::vector<std::vector<int>>& adj) {
    constexpr int inf = std::numeric_limits<int>::max();
    Matching mt;
    mt.left_to_right.assign(L, -1);
    mt.right_to_left.assign(R, -1);
    std::vector<int> layer(L);

    auto bfs = [&] {
        std::queue<int> q;
        bool found = false;
        for (int l = 0; l < L; ++l) {
            layer[l] = mt.left_to_right[l] < 0 ? 0 : inf;
            if (layer[l] == 0) q.push(l);
        }
        while (!q.empty()) {
            int l = q.front();
            q.pop();
            for (int r : adj[l]) {
                int nl = mt.right_to_left[r];
                if (nl < 0)
                    found = true;
                else if (layer[nl] == inf) {
                    layer[nl] = layer[l] + 1;
                    q.push(nl);
                }
            }
        }
        return found;
    };

    std::vector<std::size_t> it(L);
    auto dfs = [&](auto&& self, int l) -> bool {
        for (; it[l] < adj[l].size(); ++it[l]) {
            int r = adj[l][it[l]];
            int nl = mt.right_to_left[r];
            if (nl < 0 || (layer[nl] == layer[l] + 1 && self(self, nl))) {
                mt.left_to_right[l] = r;
                mt.right_to_left[r] = l;
                return true;
            }
        }
        layer[l] = inf;
        return false;
    };

    while (bfs()) {
        std::fill(it.begin(), it.end(), 0);
        for (int l = 0; l < L; ++l)
            if (mt.left_to_right[l] < 0 && dfs(dfs, l)) ++mt.size;
    }
    return mt;
}

// Convenience overload taking an explicit edge list.
inline Matching max_bipartite_matching(int L, int R, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<int>> adj(L);
    for (auto [l, r] : edges) adj[l].push_back(r);
    return max_bipartite_matching(L, R, adj);
}

}  // namespace bcol
