#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>

#include "coloring.hpp"
#include "graph.hpp"

namespace bcol {

namespace detail {

inline bool parse_int(const std::string& tok, long long& out) {
    if (tok.empty()) return false;
    std::size_t pos = 0;
    try {
        out = std::stoll(tok, &pos);
    } catch (...) {
        return false;
    }
    return pos == tok.size();
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace detail

// Format: "p edge n m", then m lines "e u v" with 1 <= u < v <= n; "c" lines
// are comments. File vertices are 1-indexed.
inline Graph parse_graph(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    long long n = -1, m = -1;
    std::vector<Edge> edges;
    std::set<Edge> seen;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag == "c") continue;
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        const std::string where = " (line " + std::to_string(lineno) + ")";
        if (tag == "p") {
            if (n >= 0) throw MalformedHeader("second header" + where);
            if (tok.size() != 3 || tok[0] != "edge" || !detail::parse_int(tok[1], n) ||
                !detail::parse_int(tok[2], m) || n < 0 || m < 0)
                throw MalformedHeader("expected 'p edge <n> <m>'" + where);
        } else if (tag == "e") {
            if (n < 0) throw MalformedHeader("edge before header" + where);
            long long u, v;
            if (tok.size() != 2 || !detail::parse_int(tok[0], u) || !detail::parse_int(tok[1], v))
                throw MalformedLine("expected 'e <u> <v>'" + where);
            if (u < 1 || u > n || v < 1 || v > n)
                throw VertexOutOfRange("vertex out of range" + where);
            if (u == v) throw SelfLoop("self-loop" + where);
            Edge e{static_cast<int>(std::min(u, v) - 1), static_cast<int>(std::max(u, v) - 1)};
            if (!seen.insert(e).second) throw DuplicateEdge("duplicate edge" + where);
            edges.push_back(e);
        } else {
            throw MalformedLine("unknown line tag '" + tag + "'" + where);
        }
    }
    if (n < 0) throw MalformedHeader("missing 'p edge' header");
    if (static_cast<long long>(edges.size()) != m)
        throw MalformedHeader("header declares " + std::to_string(m) + " edges, found " +
                              std::to_string(edges.size()));
    return Graph(static_cast<int>(n), edges);
}

inline Graph read_graph_file(const std::string& path) { return parse_graph(detail::slurp(path)); }

inline std::string format_graph(const Graph& g, std::string_view comment = {}) {
    std::ostringstream out;
    if (!comment.empty()) out << "c " << comment << '\n';
    out << "p edge " << g.n() << ' ' << g.m() << '\n';
    for (auto [u, v] : g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
    return out.str();
}

// Format: "s bcol k", then lines "v color" (1-indexed).
inline std::string format_coloring(const PartialColoring& c) {
    std::ostringstream out;
    out << "s bcol " << c.k() << '\n';
    for (Vertex v = 0; v < c.n(); ++v)
        if (c[v]) out << v + 1 << ' ' << *c[v] << '\n';
    return out.str();
}

// Colors outside [1, k] are rejected here so callers never see them.
inline PartialColoring parse_coloring(std::string_view text, int n) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::optional<PartialColoring> c;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty() || tok[0] == "c") continue;
        const std::string where = " (line " + std::to_string(lineno) + ")";
        if (tok[0] == "s") {
            long long k;
            if (c || tok.size() != 3 || tok[1] != "bcol" || !detail::parse_int(tok[2], k) || k < 0)
                throw MalformedHeader("expected single 's bcol <k>' header" + where);
            c.emplace(n, static_cast<int>(k));
            continue;
        }
        if (!c) throw MalformedHeader("assignment before 's bcol' header" + where);
        long long v, col;
        if (tok.size() != 2 || !detail::parse_int(tok[0], v) || !detail::parse_int(tok[1], col))
            throw MalformedLine("expected '<v> <color>'" + where);
        if (v < 1 || v > n) throw VertexOutOfRange("vertex out of range" + where);
        if (col < 1 || col > c->k())
            throw MalformedLine("color " + std::to_string(col) + " outside [1," +
                                std::to_string(c->k()) + "]" + where);
        if (c->has(static_cast<int>(v - 1))) throw MalformedLine("vertex colored twice" + where);
        c->set(static_cast<int>(v - 1), static_cast<int>(col));
    }
    if (!c) throw MalformedHeader("missing 's bcol <k>' header");
    return *c;
}

}  // namespace bcol
