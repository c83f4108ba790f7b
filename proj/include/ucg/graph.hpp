#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ucg {

using Vertex = int;

struct Edge {
    Vertex u = 0;
    Vertex v = 0;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

// sorted, duplicate-free
using VertexSet = std::vector<Vertex>;
using EdgeSet = std::vector<Edge>;
using CliqueList = std::vector<VertexSet>;

using P3 = std::array<Vertex, 3>;  // a-b-c, b is the middle vertex

class Graph {
public:
    Graph() = default;

    explicit Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n)), words_((n + 63) / 64) {
        if (n < 0) throw std::invalid_argument("negative vertex count");
        bits_.assign(static_cast<std::size_t>(n) * words_, 0);
    }

    Graph(int n, const std::vector<Edge>& edges) : Graph(n) {
        for (const Edge& e : edges) {
            if (e.u == e.v) throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
            if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
                throw std::invalid_argument("edge endpoint out of range");
            if (test(e.u, e.v))
                throw std::invalid_argument("duplicate edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
            set(e.u, e.v);
            set(e.v, e.u);
            adj_[e.u].push_back(e.v);
            adj_[e.v].push_back(e.u);
            ++m_;
        }
        for (auto& a : adj_) std::sort(a.begin(), a.end());
    }

    int n() const { return n_; }
    std::size_t m() const { return m_; }

    bool has_edge(Vertex u, Vertex v) const { return u != v && test(u, v); }
    const VertexSet& neighbors(Vertex v) const { return adj_[v]; }
    int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }

    EdgeSet edges() const {
        EdgeSet out;
        out.reserve(m_);
        for (Vertex u = 0; u < n_; ++u)
            for (Vertex v : adj_[u])
                if (u < v) out.push_back({u, v});
        return out;
    }

    friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.adj_ == b.adj_; }

private:
    bool test(Vertex u, Vertex v) const {
        return (bits_[static_cast<std::size_t>(u) * words_ + v / 64] >> (v % 64)) & 1u;
    }
    void set(Vertex u, Vertex v) { bits_[static_cast<std::size_t>(u) * words_ + v / 64] |= std::uint64_t{1} << (v % 64); }

    int n_ = 0;
    std::size_t m_ = 0;
    std::vector<VertexSet> adj_;
    std::vector<std::uint64_t> bits_;
    int words_ = 0;
};

// ---- construction helpers ----

inline Graph complete_graph(int n) {
    std::vector<Edge> es;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) es.push_back({u, v});
    return Graph(n, es);
}

inline Graph path_graph(int n) {
    std::vector<Edge> es;
    for (int i = 0; i + 1 < n; ++i) es.push_back({i, i + 1});
    return Graph(n, es);
}

inline Graph cycle_graph(int n) {
    std::vector<Edge> es;
    for (int i = 0; i + 1 < n; ++i) es.push_back({i, i + 1});
    if (n >= 3) es.push_back({0, n - 1});
    return Graph(n, es);
}

// vertex 0 is the centre
inline Graph star_graph(int leaves) {
    std::vector<Edge> es;
    for (int i = 1; i <= leaves; ++i) es.push_back({0, i});
    return Graph(leaves + 1, es);
}

inline Graph disjoint_union(const Graph& a, const Graph& b) {
    auto es = a.edges();
    for (Edge e : b.edges()) es.push_back({e.u + a.n(), e.v + a.n()});
    return Graph(a.n() + b.n(), es);
}

inline Graph graph_from_pairs(int n, std::initializer_list<std::pair<int, int>> pairs) {
    std::vector<Edge> es;
    for (auto [a, b] : pairs) es.push_back(make_edge(a, b));
    return Graph(n, es);
}

// vertices are relabelled 0..|keep|-1 in the order of `keep`
inline Graph induced_subgraph(const Graph& g, const VertexSet& keep) {
    std::vector<int> pos(g.n(), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) pos[keep[i]] = static_cast<int>(i);
    std::vector<Edge> es;
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (Vertex w : g.neighbors(keep[i]))
            if (pos[w] > static_cast<int>(i)) es.push_back({static_cast<int>(i), pos[w]});
    return Graph(static_cast<int>(keep.size()), es);
}

inline VertexSet all_vertices(int n) {
    VertexSet vs(n);
    std::iota(vs.begin(), vs.end(), 0);
    return vs;
}

inline VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline VertexSet set_union(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline Graph remove_edges(const Graph& g, const EdgeSet& del) {
    EdgeSet sorted = del;
    std::sort(sorted.begin(), sorted.end());
    std::vector<Edge> es;
    for (Edge e : g.edges())
        if (!std::binary_search(sorted.begin(), sorted.end(), e)) es.push_back(e);
    return Graph(g.n(), es);
}

inline Graph add_edges(const Graph& g, const EdgeSet& add) {
    auto es = g.edges();
    es.insert(es.end(), add.begin(), add.end());
    return Graph(g.n(), es);
}

inline Graph toggle_edges(const Graph& g, const EdgeSet& flip) {
    EdgeSet sorted = flip;
    std::sort(sorted.begin(), sorted.end());
    std::vector<Edge> es;
    for (Edge e : g.edges())
        if (!std::binary_search(sorted.begin(), sorted.end(), e)) es.push_back(e);
    for (Edge e : sorted)
        if (!g.has_edge(e.u, e.v)) es.push_back(e);
    return Graph(g.n(), es);
}

inline bool is_clique(const Graph& g, const VertexSet& vs) {
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (!g.has_edge(vs[i], vs[j])) return false;
    return true;
}

inline VertexSet closed_neighborhood(const Graph& g, Vertex v) {
    VertexSet out = g.neighbors(v);
    out.insert(std::lower_bound(out.begin(), out.end(), v), v);
    return out;
}

inline std::vector<VertexSet> connected_components(const Graph& g) {
    std::vector<VertexSet> comps;
    std::vector<char> seen(g.n(), 0);
    for (Vertex s = 0; s < g.n(); ++s) {
        if (seen[s]) continue;
        VertexSet comp{s};
        seen[s] = 1;
        for (std::size_t i = 0; i < comp.size(); ++i)
            for (Vertex w : g.neighbors(comp[i]))
                if (!seen[w]) {
                    seen[w] = 1;
                    comp.push_back(w);
                }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

inline bool is_connected(const Graph& g) { return g.n() <= 1 || connected_components(g).size() == 1; }

inline int min_degree(const Graph& g) {
    int d = g.n() ? g.degree(0) : 0;
    for (Vertex v = 0; v < g.n(); ++v) d = std::min(d, g.degree(v));
    return d;
}

inline int max_degree(const Graph& g) {
    int d = 0;
    for (Vertex v = 0; v < g.n(); ++v) d = std::max(d, g.degree(v));
    return d;
}

// ---- structural primitives ----

inline std::optional<CliqueList> cluster_components(const Graph& g) {
    auto comps = connected_components(g);
    for (const auto& c : comps) {
        for (Vertex v : c)
            if (g.degree(v) != static_cast<int>(c.size()) - 1) return std::nullopt;
    }
    return comps;
}

inline std::optional<int> is_uniform_cluster(const Graph& g) {
    if (g.n() == 0) return 0;
    auto comps = cluster_components(g);
    if (!comps) return std::nullopt;
    const auto size = (*comps)[0].size();
    for (const auto& c : *comps)
        if (c.size() != size) return std::nullopt;
    return static_cast<int>(size);
}

namespace detail {

// Lexicographically first induced P3 (a,b,c) with a<...: scan a, then b in N(a), then c in N(b).
// `alive` restricts the search; empty means every vertex.
inline std::optional<P3> first_p3(const Graph& g, const std::vector<char>& alive) {
    auto ok = [&](Vertex v) { return alive.empty() || alive[v]; };
    for (Vertex a = 0; a < g.n(); ++a) {
        if (!ok(a)) continue;
        for (Vertex b : g.neighbors(a)) {
            if (!ok(b)) continue;
            for (Vertex c : g.neighbors(b))
                if (c != a && ok(c) && !g.has_edge(a, c)) return P3{a, b, c};
        }
    }
    return std::nullopt;
}

}  // namespace detail

inline std::optional<P3> find_induced_p3(const Graph& g) { return detail::first_p3(g, {}); }

inline std::vector<P3> maximal_p3_packing(const Graph& g) {
    std::vector<char> alive(g.n(), 1);
    std::vector<P3> packing;
    while (auto p = detail::first_p3(g, alive)) {
        packing.push_back(*p);
        for (Vertex v : *p) alive[v] = 0;
    }
    return packing;
}

inline int edge_score(const Graph& g, Edge e) {
    if (!g.has_edge(e.u, e.v)) throw std::invalid_argument("edge_score: edge not in graph");
    int score = 0;
    for (Vertex w = 0; w < g.n(); ++w)
        if (w != e.u && w != e.v && g.has_edge(w, e.u) != g.has_edge(w, e.v)) ++score;
    return score;
}

inline bool are_true_twins(const Graph& g, Vertex u, Vertex v) {
    return closed_neighborhood(g, u) == closed_neighborhood(g, v);
}

}  // namespace ucg
