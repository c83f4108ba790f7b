#pragma once

#include <bit>
#include <functional>
#include <set>
#include <string>

#include "ucg/graph.hpp"
#include "ucg/random.hpp"
#include "ucg/ucvd_solver.hpp"

namespace testing_support {

using namespace ucg;

inline Graph random_graph(Rng& rng, int n, double p) {
    std::vector<Edge> es;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.chance(p)) es.push_back({u, v});
    return Graph(n, es);
}

// every labelled graph on n vertices (n ≤ 7 keeps this cheap)
inline void for_each_graph(int n, const std::function<void(const Graph&)>& fn) {
    std::vector<Edge> pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) pairs.push_back({u, v});
    const std::uint64_t total = std::uint64_t{1} << pairs.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        std::vector<Edge> es;
        for (std::size_t i = 0; i < pairs.size(); ++i)
            if (mask >> i & 1) es.push_back(pairs[i]);
        fn(Graph(n, es));
    }
}

// Independent P3 enumeration by vertex triples.
inline int count_p3_with_edge(const Graph& g, Edge e) {
    int count = 0;
    for (Vertex w = 0; w < g.n(); ++w) {
        if (w == e.u || w == e.v) continue;
        int edges = g.has_edge(e.u, e.v) + g.has_edge(e.u, w) + g.has_edge(e.v, w);
        if (edges == 2) ++count;  // the triple induces a P3 and e is one of its two edges
    }
    return count;
}

inline bool has_p3_by_triples(const Graph& g) {
    for (int a = 0; a < g.n(); ++a)
        for (int b = a + 1; b < g.n(); ++b)
            for (int c = b + 1; c < g.n(); ++c)
                if (g.has_edge(a, b) + g.has_edge(a, c) + g.has_edge(b, c) == 2) return true;
    return false;
}

inline Graph diamond() {  // a=0 b=1 c=2 d=3: ab ac bc bd cd
    return graph_from_pairs(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}});
}

inline Graph bowtie() {  // two triangles sharing vertex 0
    return graph_from_pairs(5, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {0, 4}, {3, 4}});
}

inline Graph two_k3_bridge() {  // 0-1-2 and 3-4-5 joined by 2-3
    return graph_from_pairs(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {2, 3}});
}

// Canonical labelled form up to isomorphism: vertices sorted by degree, every order inside each
// degree class tried, lexicographically smallest adjacency string kept.
inline std::string canonical_form(const Graph& g) {
    const int n = g.n();
    std::vector<Vertex> order = all_vertices(n);
    std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return g.degree(a) < g.degree(b); });
    std::vector<std::pair<int, int>> groups;  // [begin, end) of equal degree
    for (int i = 0; i < n;) {
        int j = i;
        while (j < n && g.degree(order[j]) == g.degree(order[i])) ++j;
        groups.push_back({i, j});
        i = j;
    }
    std::string best;
    auto encode = [&] {
        std::string s(static_cast<std::size_t>(n * (n - 1) / 2), '0');
        std::size_t pos = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s[pos++] = g.has_edge(order[i], order[j]) ? '1' : '0';
        return s;
    };
    auto rec = [&](auto&& self, std::size_t gi) -> void {
        if (gi == groups.size()) {
            std::string s = encode();
            if (best.empty() || s < best) best = s;
            return;
        }
        auto b = order.begin() + groups[gi].first, e = order.begin() + groups[gi].second;
        std::sort(b, e);
        do self(self, gi + 1);
        while (std::next_permutation(b, e));
    };
    rec(rec, 0);
    return std::to_string(n) + ":" + best;
}

inline bool has_induced_c4_by_quadruples(const Graph& g) {
    const int n = g.n();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
                    if (g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(c, d) && g.has_edge(d, a) && !g.has_edge(a, c) &&
                        !g.has_edge(b, d))
                        return true;
                }
    return false;
}

inline bool in_score2_class(const Graph& g) {
    for (Edge e : g.edges())
        if (count_p3_with_edge(g, e) > 2) return false;
    return !has_induced_c4_by_quadruples(g);
}

// All graphs (up to isomorphism) with max edge score ≤ 2 and no induced C4, indexed by order.
// The class is closed under vertex deletion, so extending each member by one vertex reaches all of it.
inline std::vector<std::vector<Graph>> score2_class(int max_n) {
    std::vector<std::vector<Graph>> out(max_n + 1);
    out[0].push_back(Graph(0));
    for (int n = 1; n <= max_n; ++n) {
        std::set<std::string> seen;
        for (const Graph& base : out[n - 1]) {
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
                std::vector<Edge> es = base.edges();
                for (int v = 0; v < n - 1; ++v)
                    if (mask >> v & 1) es.push_back({v, n - 1});
                Graph g(n, es);
                if (!in_score2_class(g)) continue;
                if (seen.insert(canonical_form(g)).second) out[n].push_back(g);
            }
        }
    }
    return out;
}

// Independent feasibility check: enumerate set partitions into blocks of size c, test each block.
inline bool feasible_by_set_partitions(const Graph& g, int c) {
    const int n = g.n();
    if (c <= 0 || n % c != 0) return false;
    std::vector<int> block(n, -1);
    std::vector<int> size;
    auto rec = [&](auto&& self, int v) -> bool {
        if (v == n) return true;
        for (std::size_t b = 0; b <= size.size(); ++b) {
            if (b == size.size()) {
                if (static_cast<int>(size.size()) == n / c) break;
                size.push_back(0);
            }
            if (size[b] < c) {
                bool ok = true;
                for (int w = 0; w < v && ok; ++w)
                    if (block[w] == static_cast<int>(b)) ok = g.has_edge(v, w);
                if (ok) {
                    block[v] = static_cast<int>(b);
                    ++size[b];
                    if (self(self, v + 1)) return true;
                    --size[b];
                    block[v] = -1;
                }
            }
            if (size[b] == 0) {
                size.pop_back();
                break;
            }
        }
        return false;
    };
    return rec(rec, 0);
}

// H = G - X_out is a random cluster graph (three labels); edges touching X_out are arbitrary
inline DisjointInstance random_disjoint_instance(Rng& rng, int max_n) {
    const int n = rng.range(2, max_n);
    VertexSet xo;
    for (int v = 0; v < n; ++v)
        if (rng.chance(0.35)) xo.push_back(v);
    std::vector<int> label(n);
    for (int v = 0; v < n; ++v) label[v] = rng.range(0, 2);
    const double p = rng.unit();
    std::vector<Edge> es;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            const bool touches = std::binary_search(xo.begin(), xo.end(), u) || std::binary_search(xo.begin(), xo.end(), v);
            if (touches ? rng.chance(p) : label[u] == label[v]) es.push_back({u, v});
        }
    return {Graph(n, es), xo, rng.range(0, 3)};
}

// deletion sets avoiding X_out, by subset enumeration
inline bool restricted_ucvd_brute_force(const DisjointInstance& di) {
    const int n = di.graph.n();
    VertexSet free = set_difference(all_vertices(n), di.x_out);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
        if (std::popcount(mask) > di.k) continue;
        VertexSet del;
        for (std::size_t i = 0; i < free.size(); ++i)
            if (mask >> i & 1) del.push_back(free[i]);
        if (is_uniform_cluster(induced_subgraph(di.graph, set_difference(all_vertices(n), del)))) return true;
    }
    return false;
}

// q disjoint K_s with `merges` identifications of vertices from different cliques, then `noise` toggled pairs
inline Graph merged_cliques(Rng& rng, int q, int s, int merges, int noise) {
    const int n0 = q * s;
    std::vector<int> rep(n0);
    for (int v = 0; v < n0; ++v) rep[v] = v;
    for (int i = 0; i < merges; ++i) {
        const int a = rng.range(0, n0 - 1), b = rng.range(0, n0 - 1);
        if (a / s == b / s) continue;
        const int ra = rep[a], rb = rep[b];
        if (ra == rb) continue;
        for (int& r : rep)
            if (r == rb) r = ra;
    }
    std::vector<int> id(n0, -1);
    int n = 0;
    for (int v = 0; v < n0; ++v)
        if (rep[v] == v) id[v] = n++;
    std::set<Edge> es;
    for (int c = 0; c < q; ++c)
        for (int i = 0; i < s; ++i)
            for (int j = i + 1; j < s; ++j) {
                const int a = id[rep[c * s + i]], b = id[rep[c * s + j]];
                if (a != b) es.insert(make_edge(a, b));
            }
    for (int i = 0; i < noise; ++i) {
        const int a = rng.range(0, n - 1), b = rng.range(0, n - 1);
        if (a == b) continue;
        const Edge e = make_edge(a, b);
        if (!es.erase(e)) es.insert(e);
    }
    return Graph(n, std::vector<Edge>(es.begin(), es.end()));
}

}  // namespace testing_support
