#pragma once

#include <map>

#include "io.hpp"

namespace ucg {

enum class FamilyKind { partition, cover };

struct CliqueFamily {
    FamilyKind kind = FamilyKind::partition;
    std::vector<VertexSet> parts;

    std::vector<int> freq(int n) const {
        std::vector<int> f(n, 0);
        for (const auto& p : parts)
            for (Vertex v : p) ++f[v];
        return f;
    }
    long long cost(int n) const {
        long long c = 0;
        for (int f : freq(n)) c += std::max(0, f - 1);
        return c;
    }
    long long weight() const {
        long long w = 0;
        for (const auto& p : parts) w += static_cast<long long>(p.size());
        return w;
    }
};

// Empty string when `fam` is a valid uniform family of its kind for g.
inline std::string check_family(const Graph& g, const CliqueFamily& fam) {
    if (fam.parts.empty()) return g.m() == 0 ? "" : "empty family for a graph with edges";
    const auto size = fam.parts[0].size();
    std::map<Edge, int> hits;
    for (const auto& p : fam.parts) {
        if (p.size() != size) return "parts of unequal size";
        if (p.size() < 2) return "parts must have at least two vertices";
        if (!std::is_sorted(p.begin(), p.end()) || std::adjacent_find(p.begin(), p.end()) != p.end())
            return "part is not a sorted set";
        for (Vertex v : p)
            if (v < 0 || v >= g.n()) return "part vertex out of range";
        if (!is_clique(g, p)) return "part does not induce a clique";
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = i + 1; j < p.size(); ++j) ++hits[{p[i], p[j]}];
    }
    for (Edge e : g.edges()) {
        auto it = hits.find(e);
        if (it == hits.end()) return "edge not covered";
        if (fam.kind == FamilyKind::partition && it->second > 1) return "edge in more than one part";
    }
    for (Vertex v = 0; v < g.n(); ++v)
        if (g.degree(v) == 0) return "graph has an isolated vertex";
    return "";
}

namespace detail {

inline Vertex lowest_shared_vertex(const std::vector<int>& freq) {
    for (Vertex v = 0; v < static_cast<Vertex>(freq.size()); ++v)
        if (freq[v] >= 2) return v;
    return -1;
}

// parts containing u other than `keep` get u replaced by `fresh`
inline void move_to_fresh(std::vector<VertexSet>& parts, std::size_t keep, Vertex u, Vertex fresh) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i == keep) continue;
        auto it = std::lower_bound(parts[i].begin(), parts[i].end(), u);
        if (it == parts[i].end() || *it != u) continue;
        parts[i].erase(it);
        parts[i].push_back(fresh);  // fresh exceeds every existing id
    }
}

inline std::size_t first_part_with(const std::vector<VertexSet>& parts, Vertex u) {
    for (std::size_t i = 0; i < parts.size(); ++i)
        if (std::binary_search(parts[i].begin(), parts[i].end(), u)) return i;
    return parts.size();
}

}  // namespace detail

// Exclusive splits turning a K_d edge partition into a disjoint one; length = cost.
inline SplitSequence partition_to_splits(const Graph& g, const CliqueFamily& fam) {
    if (fam.kind != FamilyKind::partition) throw std::invalid_argument("partition_to_splits needs a partition");
    if (auto err = check_family(g, fam); !err.empty()) throw std::invalid_argument("invalid partition: " + err);
    SplitSequence seq;
    Graph cur = g;
    auto parts = fam.parts;
    while (true) {
        CliqueFamily now{FamilyKind::partition, parts};
        Vertex u = detail::lowest_shared_vertex(now.freq(cur.n()));
        if (u < 0) break;
        std::size_t p1 = detail::first_part_with(parts, u);
        SplitStep step;
        step.vertex = u;
        step.mode = SplitMode::exclusive;
        step.first = set_intersection(cur.neighbors(u), parts[p1]);
        step.second = set_difference(cur.neighbors(u), step.first);
        const Vertex fresh = cur.n();
        cur = apply_split(cur, step, static_cast<int>(seq.size()));
        detail::move_to_fresh(parts, p1, u, fresh);
        seq.push_back(std::move(step));
    }
    return seq;
}

// Inclusive splits turning a uniform clique cover into a partition of the vertex set.
inline SplitSequence cover_to_splits(const Graph& g, const CliqueFamily& fam) {
    if (auto err = check_family(g, fam); !err.empty()) throw std::invalid_argument("invalid cover: " + err);
    SplitSequence seq;
    Graph cur = g;
    auto parts = fam.parts;
    while (true) {
        CliqueFamily now{FamilyKind::cover, parts};
        Vertex u = detail::lowest_shared_vertex(now.freq(cur.n()));
        if (u < 0) break;
        std::size_t c1 = detail::first_part_with(parts, u);
        const VertexSet& nb = cur.neighbors(u);
        SplitStep step;
        step.vertex = u;
        step.mode = SplitMode::inclusive;
        step.first = set_intersection(nb, parts[c1]);
        VertexSet shared;
        for (Vertex v : step.first)
            for (std::size_t i = 0; i < parts.size(); ++i)
                if (i != c1 && std::binary_search(parts[i].begin(), parts[i].end(), u) &&
                    std::binary_search(parts[i].begin(), parts[i].end(), v)) {
                    shared.push_back(v);
                    break;
                }
        step.second = set_union(set_difference(nb, parts[c1]), shared);
        const Vertex fresh = cur.n();
        cur = apply_split(cur, step, static_cast<int>(seq.size()));
        detail::move_to_fresh(parts, c1, u, fresh);
        seq.push_back(std::move(step));
    }
    return seq;
}

// Inverse rewrite of one split: identifies the fresh copy with the original vertex again.
inline CliqueFamily merge_split(const CliqueFamily& after, Vertex u, Vertex fresh) {
    CliqueFamily before = after;
    for (auto& p : before.parts) {
        auto it = std::find(p.begin(), p.end(), fresh);
        if (it == p.end()) continue;
        *it = u;
        std::sort(p.begin(), p.end());
    }
    return before;
}

// Family on g induced by a split sequence that ends in a uniform cluster graph.
inline std::optional<CliqueFamily> family_from_splits(const Graph& g, const SplitSequence& seq, FamilyKind kind) {
    Graph cur = g;
    for (std::size_t i = 0; i < seq.size(); ++i) cur = apply_split(cur, seq[i], static_cast<int>(i));
    auto comps = cluster_components(cur);
    if (!comps || !is_uniform_cluster(cur)) return std::nullopt;
    CliqueFamily fam{kind, *comps};
    for (std::size_t i = seq.size(); i-- > 0;) fam = merge_split(fam, seq[i].vertex, g.n() + static_cast<Vertex>(i));
    return fam;
}

}  // namespace ucg
