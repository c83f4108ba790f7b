#pragma once

#include <functional>

#include "oracle.hpp"
#include "uced_branch.hpp"

namespace ucg {

// Contract of oracle_dway_cut: a partition into exactly d connected parts whose crossing edges number at most
// `budget`, minimum among such partitions; nullopt if none exists.
using CutOracle = std::function<std::optional<CutResult>(const Graph&, int d, long long budget)>;

inline CutOracle bruteforce_cut_oracle(std::stop_token stop = {}) {
    return [stop](const Graph& g, int d, long long budget) {
        OracleOptions opt;
        opt.stop = stop;
        return oracle_dway_cut(g, d, budget, opt);
    };
}

struct DenseOptions {
    long long guard_constant = 49;  // the cut path needs δ² > guard_constant·k
    CutOracle cut;                  // defaults to the brute-force oracle
    UcedBranchOptions fallback;
};

struct DenseStats {
    bool fallback = false;
    std::vector<int> h_tried;
    int cut_calls = 0;
    long long assignments = 0;
    std::optional<int> h_used;
    VertexSet L;                      // heavy set of the successful guess
    std::vector<VertexSet> cut_parts;  // parts of G − L (original ids) for the successful guess
};

namespace detail {

// x ≥ √k for integer x, k ≥ 0, without floating point
inline bool at_least_sqrt(long long x, long long k) { return x >= 0 && x * x >= k; }

}  // namespace detail

// Vertices that must lose at least √k edges (and at least one) to end at degree h.
inline VertexSet heavy_set_L(const Graph& g, int h, int k) {
    VertexSet out;
    for (Vertex v = 0; v < g.n(); ++v) {
        const long long excess = static_cast<long long>(g.degree(v)) - h;
        if (excess >= 1 && detail::at_least_sqrt(excess, k)) out.push_back(v);
    }
    return out;
}

inline bool dense_fallback(const Graph& g, int k, long long guard_constant = 49) {
    const long long n = g.n(), delta = min_degree(g);
    return delta == 0 || delta * delta <= guard_constant * k || n * n <= 4LL * k;
}

// Places every L vertex into a part of G − L so that each part becomes a clique of size h+1; returns the
// crossing edges of the first such placement when they fit in k.
inline std::optional<EdgeSet> reconstruct_from_cut(const Graph& g, const VertexSet& L, const std::vector<VertexSet>& parts,
                                                   int h, int k, long long* assignments = nullptr) {
    const int d = static_cast<int>(parts.size());
    std::vector<int> room(d);
    long long total_room = 0;
    for (int i = 0; i < d; ++i) {
        room[i] = h + 1 - static_cast<int>(parts[i].size());
        if (room[i] < 0 || !is_clique(g, parts[i])) return std::nullopt;
        total_room += room[i];
    }
    if (total_room != static_cast<long long>(L.size())) return std::nullopt;
    std::vector<VertexSet> aug = parts;
    std::optional<EdgeSet> found;
    auto place = [&](auto&& self, std::size_t i) -> void {
        if (found) return;
        if (i == L.size()) {
            if (assignments) ++*assignments;
            std::vector<int> where(g.n(), -1);
            for (int p = 0; p < d; ++p)
                for (Vertex v : aug[p]) where[v] = p;
            EdgeSet cross;
            for (Edge e : g.edges())
                if (where[e.u] != where[e.v]) cross.push_back(e);
            if (static_cast<long long>(cross.size()) <= k) found = std::move(cross);
            return;
        }
        const Vertex v = L[i];
        for (int p = 0; p < d; ++p) {
            if (room[p] == 0) continue;
            bool ok = true;
            for (Vertex w : aug[p]) ok = ok && g.has_edge(v, w);
            if (!ok) continue;
            --room[p];
            aug[p].push_back(v);
            self(self, i + 1);
            aug[p].pop_back();
            ++room[p];
        }
    };
    place(place, 0);
    return found;
}

inline std::optional<Witness> solve_uced_dense(const Graph& g, int k, const DenseOptions& opt = {}, DenseStats* stats = nullptr) {
    DenseStats local;
    DenseStats& st = stats ? *stats : local;
    st = DenseStats{};
    if (k < 0) return std::nullopt;
    if (dense_fallback(g, k, opt.guard_constant)) {
        st.fallback = true;
        return solve_uced(g, k, opt.fallback);
    }
    const CutOracle cut = opt.cut ? opt.cut : bruteforce_cut_oracle(opt.fallback.stop);
    const long long n = g.n(), m = static_cast<long long>(g.m()), delta = min_degree(g);
    // deletions only lower degrees, so the final clique size h+1 satisfies δ − √k ≤ h+1 ≤ δ+1;
    // larger h means fewer deletions, so the first success is a minimum
    for (int h = static_cast<int>(delta); h >= 0; --h) {
        if (n % (h + 1)) continue;
        if (delta > h + 1 && (delta - h - 1) * (delta - h - 1) > k) continue;
        if (2 * m - n * h > 2LL * k) continue;
        VertexSet L = heavy_set_L(g, h, k);
        if (static_cast<long long>(L.size() * L.size()) > 4LL * k) continue;
        const int d = static_cast<int>(n / (h + 1));
        VertexSet rest = set_difference(all_vertices(g.n()), L);
        if (d > static_cast<int>(rest.size())) continue;
        st.h_tried.push_back(h);
        const Graph sub = induced_subgraph(g, rest);
        std::optional<CutResult> res;
        ++st.cut_calls;
        try {
            res = cut(sub, d, k);
        } catch (const CapacityError& e) {
            throw CapacityError(std::string(e.what()) + " (dense guess h=" + std::to_string(h) + ")");
        }
        if (!res) continue;
        std::vector<VertexSet> parts;
        for (const auto& p : res->parts) {
            VertexSet q;
            for (Vertex v : p) q.push_back(rest[v]);
            parts.push_back(q);
        }
        auto edges = reconstruct_from_cut(g, L, parts, h, k, &st.assignments);
        if (!edges) continue;
        st.h_used = h;
        st.L = L;
        st.cut_parts = parts;
        return Witness{Variant::uced, {}, *edges, {}};
    }
    return std::nullopt;
}

}  // namespace ucg
