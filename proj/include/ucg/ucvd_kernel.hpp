#pragma once

#include <map>

#include "kernel.hpp"

namespace ucg {

// S = vertices of a maximal P3 packing, cliques = components of G - S.
struct CliquePartitionState {
    int k = 0;
    std::size_t packing_size = 0;
    VertexSet S;
    CliqueList cliques;
    std::vector<int> clique_of;        // vertex -> clique index, -1 for S
    std::vector<char> touches_s;       // clique has a vertex with an S-neighbour (𝒞₁)
    std::vector<int> heavy;            // vertex -> heavy clique index (S vertices only), -1 if none
};

inline std::optional<int> heavy_neighbor_of(const Graph& g, const CliquePartitionState& st, Vertex s) {
    std::map<int, int> hits;
    for (Vertex w : g.neighbors(s))
        if (st.clique_of[w] >= 0) ++hits[st.clique_of[w]];
    for (auto [c, cnt] : hits) {
        const int size = static_cast<int>(st.cliques[c].size());
        if (cnt >= std::max(size - 4 * st.k, st.k + 1)) return c;
    }
    return std::nullopt;
}

inline CliquePartitionState build_partition_state(const Graph& g, int k) {
    CliquePartitionState st;
    st.k = k;
    auto packing = maximal_p3_packing(g);
    st.packing_size = packing.size();
    for (const auto& p : packing) st.S.insert(st.S.end(), p.begin(), p.end());
    std::sort(st.S.begin(), st.S.end());
    VertexSet rest = set_difference(all_vertices(g.n()), st.S);
    Graph h = induced_subgraph(g, rest);
    st.clique_of.assign(g.n(), -1);
    for (const auto& comp : connected_components(h)) {
        VertexSet c;
        for (Vertex v : comp) c.push_back(rest[v]);
        for (Vertex v : c) st.clique_of[v] = static_cast<int>(st.cliques.size());
        st.cliques.push_back(std::move(c));
    }
    st.touches_s.assign(st.cliques.size(), 0);
    for (Vertex s : st.S)
        for (Vertex w : g.neighbors(s))
            if (st.clique_of[w] >= 0) st.touches_s[st.clique_of[w]] = 1;
    st.heavy.assign(g.n(), -1);
    for (Vertex s : st.S)
        if (auto h = heavy_neighbor_of(g, st, s)) st.heavy[s] = *h;
    return st;
}

// 𝒩(C): non-neighbours in C of the S-vertices heavy on C, plus neighbours in C of all other S-vertices.
inline VertexSet boundary_set(const Graph& g, const CliquePartitionState& st, int c) {
    const VertexSet& C = st.cliques[c];
    VertexSet out;
    for (Vertex s : st.S) {
        VertexSet part = st.heavy[s] == c ? set_difference(C, g.neighbors(s)) : set_intersection(C, g.neighbors(s));
        out = set_union(out, part);
    }
    return out;
}

// Cubic bound on a reduced UCVD instance: Case 1 gives 3k + 8k(4k²+5k+1); the Case 2
// part bounds sum to 79k³+60k²+14k+1 ≤ 154k³ (derivation in the README).
inline long long ucvd_case1_bound(long long k) { return 32 * k * k * k + 40 * k * k + 11 * k; }
inline long long ucvd_case2_bound(long long k) { return 79 * k * k * k + 60 * k * k + 14 * k + 1; }
inline long long ucvd_kernel_bound(long long k) { return std::max(ucvd_case1_bound(k), 154 * k * k * k); }

inline KernelOutcome kernelize_ucvd(const Graph& input, int k, const KernelOptions& opt = {}) {
    detail::KernelRun run(input, k, Variant::ucvd, opt);
    run.snapshot();
    while (true) {
        const Graph& g = run.g;
        const int kk = run.k;
        if (kk < 0) return run.decide(Decision::no, "BUDGET");
        if (is_uniform_cluster(g)) return run.decide(Decision::yes, "UNIFORM");
        if (kk == 0) return run.decide(Decision::no, "BUDGET");

        auto st = build_partition_state(g, kk);
        if (st.packing_size > static_cast<std::size_t>(kk)) return run.decide(Decision::no, "PACKING");
        const int nc = static_cast<int>(st.cliques.size());

        // Rule 1
        bool fired = false;
        for (Vertex s : st.S) {
            std::vector<int> per(nc, 0);
            int total = 0;
            for (Vertex w : g.neighbors(s))
                if (st.clique_of[w] >= 0) {
                    ++per[st.clique_of[w]];
                    ++total;
                }
            int distinct = 0;
            bool heavy_and_spread = false;
            for (int c = 0; c < nc; ++c) {
                if (per[c] > 0) ++distinct;
                if (per[c] >= kk + 1 && total - per[c] > kk) heavy_and_spread = true;
            }
            if (distinct >= kk + 2 || heavy_and_spread) {
                run.remove_vertices({s}, "UCVD1", 1, true);
                fired = true;
                break;
            }
        }
        if (fired) continue;

        // Rule 2: at most k+1 cliques of each size among those without S-neighbours
        {
            std::map<std::size_t, std::vector<int>> by_size;
            for (int c = 0; c < nc; ++c)
                if (!st.touches_s[c]) by_size[st.cliques[c].size()].push_back(c);
            VertexSet drop;
            for (auto& [size, ids] : by_size)
                for (std::size_t i = kk + 1; i < ids.size(); ++i)
                    drop.insert(drop.end(), st.cliques[ids[i]].begin(), st.cliques[ids[i]].end());
            if (!drop.empty()) {
                run.remove_vertices(drop, "UCVD2", 0, false);
                continue;
            }
            // Rule 3
            if (by_size.size() > static_cast<std::size_t>(kk + 1)) return run.decide(Decision::no, "UCVD3");
        }

        std::size_t omega = 0;
        for (const auto& c : st.cliques) omega = std::max(omega, c.size());
        if (omega < static_cast<std::size_t>(8 * kk)) {
            if (static_cast<long long>(g.n()) > ucvd_case1_bound(kk))
                throw std::logic_error("ucvd kernel: Case 1 size bound violated");
            return run.reduce("CASE1");
        }

        // Rule 3a: a clique more than 4k smaller than the largest one is deleted entirely
        {
            int smallest = -1;
            for (int c = 0; c < nc; ++c)
                if (smallest < 0 || st.cliques[c].size() < st.cliques[smallest].size()) smallest = c;
            if (omega - st.cliques[smallest].size() > static_cast<std::size_t>(4 * kk)) {
                const int cost = static_cast<int>(st.cliques[smallest].size());
                if (cost > kk) return run.decide(Decision::no, "UCVD3a");
                run.remove_vertices(st.cliques[smallest], "UCVD3a", cost, true);
                continue;
            }
        }

        // Rule 4
        {
            auto it = std::find_if(st.S.begin(), st.S.end(), [&](Vertex s) { return st.heavy[s] < 0; });
            if (it != st.S.end()) {
                run.remove_vertices({*it}, "UCVD4", 1, true);
                continue;
            }
        }

        std::vector<VertexSet> twins(nc);
        for (int c = 0; c < nc; ++c) twins[c] = set_difference(st.cliques[c], boundary_set(g, st, c));

        // Rule 6: every twin class has more than k+1 members → drop one from each
        {
            std::size_t min_twins = SIZE_MAX;
            for (const auto& t : twins) min_twins = std::min(min_twins, t.size());
            if (nc > 0 && min_twins > static_cast<std::size_t>(kk + 1)) {
                VertexSet drop;
                for (const auto& t : twins) drop.push_back(t.front());
                run.remove_vertices(drop, "UCVD6", 0, false);
                continue;
            }
        }

        // Step 8 on ℒ′ = non-heavy cliques with ≥ k+1 twins
        std::vector<char> is_heavy(nc, 0);
        for (Vertex s : st.S) is_heavy[st.heavy[s]] = 1;
        std::vector<int> lprime;
        for (int c = 0; c < nc; ++c)
            if (!is_heavy[c] && twins[c].size() >= static_cast<std::size_t>(kk + 1)) lprime.push_back(c);
        if (lprime.size() >= static_cast<std::size_t>(2 * kk + 1)) {
            std::map<int, int> degree_count;
            for (int c : lprime) ++degree_count[g.degree(twins[c].front())];
            int d = -1;
            for (auto [deg, cnt] : degree_count)
                if (cnt >= static_cast<int>(lprime.size()) - kk) d = deg;
            if (d < 0) return run.decide(Decision::no, "UCVD-d");
            const std::size_t c_size = static_cast<std::size_t>(d + 1);

            // Rule 7
            Vertex low = -1;
            for (Vertex v = 0; v < g.n() && low < 0; ++v)
                if (g.degree(v) < d) low = v;
            if (low >= 0) {
                run.remove_vertices({low}, "UCVD7", 1, true);
                continue;
            }
            // Rule 8
            bool r8 = false;
            for (int c : lprime) {
                if (st.cliques[c].size() != c_size) continue;
                VertexSet nb;
                for (Vertex v : st.cliques[c]) nb = set_union(nb, set_difference(g.neighbors(v), st.cliques[c]));
                if (nb.empty()) continue;
                const int cost = static_cast<int>(nb.size());
                if (cost > kk) return run.decide(Decision::no, "UCVD8");
                run.remove_vertices(nb, "UCVD8", cost, true);
                r8 = true;
                break;
            }
            if (r8) continue;
            // Rule 10
            int larger = 0;
            for (int c : lprime) larger += st.cliques[c].size() > c_size;
            if (larger > kk) return run.decide(Decision::no, "UCVD10");
        }

        if (static_cast<long long>(g.n()) > ucvd_case2_bound(kk)) return run.decide(Decision::no, "UCVD-size");
        return run.reduce("CASE2");
    }
}

}  // namespace ucg
