#pragma once

#include <optional>
#include <vector>

#include "graph.hpp"

namespace bcol {

using Color = int;  // colors live in [1, k]

// Map from a subset of the vertices to colors in [1, k].
class PartialColoring {
public:
    PartialColoring() = default;
    PartialColoring(int n, int k) : k_(k), c_(static_cast<std::size_t>(n)) {}

    int k() const { return k_; }
    int n() const { return static_cast<int>(c_.size()); }

    std::optional<Color> operator[](Vertex v) const { return c_[v]; }
    bool has(Vertex v) const { return c_[v].has_value(); }

    void set(Vertex v, Color c) {
        if (c < 1 || c > k_) throw PreconditionViolated("color out of range");
        c_[v] = c;
    }
    void clear(Vertex v) { c_[v].reset(); }

    bool total() const {
        for (const auto& x : c_)
            if (!x) return false;
        return true;
    }

    std::size_t assigned() const {
        std::size_t s = 0;
        for (const auto& x : c_) s += x.has_value();
        return s;
    }

    // Proper on the colored part: no edge between equally colored vertices.
    bool proper(const Graph& g) const {
        for (auto [u, v] : g.edges())
            if (c_[u] && c_[v] && *c_[u] == *c_[v]) return false;
        return true;
    }

    friend bool operator==(const PartialColoring&, const PartialColoring&) = default;

private:
    int k_ = 0;
    std::vector<std::optional<Color>> c_;
};

}  // namespace bcol
