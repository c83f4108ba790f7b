#pragma once

#include <atomic>
#include <mutex>
#include <thread>

#include "io.hpp"

namespace ucg {

// Plain 3-way branching on an induced P3.
inline std::optional<VertexSet> cvd_branching(const Graph& g, int k) {
    if (k < 0) return std::nullopt;
    auto p = find_induced_p3(g);
    if (!p) return VertexSet{};
    if (k == 0) return std::nullopt;
    for (Vertex v : *p) {
        VertexSet keep = set_difference(all_vertices(g.n()), {v});
        if (auto sub = cvd_branching(induced_subgraph(g, keep), k - 1)) {
            VertexSet out{v};
            for (Vertex w : *sub) out.push_back(keep[w]);
            std::sort(out.begin(), out.end());
            return out;
        }
    }
    return std::nullopt;
}

struct DisjointInstance {
    Graph graph;
    VertexSet x_out;  // undeletable
    int k = 0;
};

struct CompletionMatching {
    std::vector<std::vector<int>> adj;  // A index -> eligible B indices
    std::vector<int> match_of_a;        // B index or -1
    bool saturated = false;
};

// Kuhn's augmenting-path maximum matching.
inline std::vector<int> max_bipartite_matching(const std::vector<std::vector<int>>& adj, int nb) {
    std::vector<int> match_a(adj.size(), -1), match_b(nb, -1);
    std::vector<char> seen;
    auto augment = [&](auto&& self, int a) -> bool {
        for (int b : adj[a]) {
            if (seen[b]) continue;
            seen[b] = 1;
            if (match_b[b] < 0 || self(self, match_b[b])) {
                match_a[a] = b;
                match_b[b] = a;
                return true;
            }
        }
        return false;
    };
    for (std::size_t a = 0; a < adj.size(); ++a) {
        seen.assign(nb, 0);
        augment(augment, static_cast<int>(a));
    }
    return match_a;
}

// A = X_out cliques (each smaller than c) plus p - |X_out cliques| dummy slots; B = H cliques.
inline CompletionMatching build_completion_matching(const Graph& g, const CliqueList& xout_cliques,
                                                    const CliqueList& h_cliques, int c, int p) {
    CompletionMatching cm;
    VertexSet x_out;
    for (const auto& ca : xout_cliques) x_out = set_union(x_out, ca);
    const int real = static_cast<int>(xout_cliques.size());
    if (p < real) return cm;
    cm.adj.assign(p, {});
    for (int a = 0; a < real; ++a) {
        const VertexSet& ca = xout_cliques[a];
        for (int b = 0; b < static_cast<int>(h_cliques.size()); ++b) {
            int donors = 0;
            for (Vertex v : h_cliques[b])
                if (std::includes(g.neighbors(v).begin(), g.neighbors(v).end(), ca.begin(), ca.end())) ++donors;
            if (donors >= c - static_cast<int>(ca.size())) cm.adj[a].push_back(b);
        }
    }
    std::vector<int> dummy_ok;
    for (int b = 0; b < static_cast<int>(h_cliques.size()); ++b) {
        int free_vertices = 0;
        for (Vertex v : h_cliques[b])
            if (set_intersection(g.neighbors(v), x_out).empty()) ++free_vertices;
        if (free_vertices >= c) dummy_ok.push_back(b);
    }
    for (int a = real; a < p; ++a) cm.adj[a] = dummy_ok;
    cm.match_of_a = max_bipartite_matching(cm.adj, static_cast<int>(h_cliques.size()));
    cm.saturated = std::all_of(cm.match_of_a.begin(), cm.match_of_a.end(), [](int b) { return b >= 0; });
    return cm;
}

// Bookkeeping counters, useful for checking which paths produced answers.
struct DisjointStats {
    long long guesses = 0;
    long long used_dummy = 0;     // successful guesses with at least one dummy slot
    long long used_finished = 0;  // successful guesses with a Rule 3 finished clique
    long long forced_rule2 = 0;
};

inline std::optional<VertexSet> solve_disjoint_ucvd(const DisjointInstance& di, DisjointStats* stats = nullptr) {
    const Graph& g0 = di.graph;
    const int n0 = g0.n();
    std::vector<char> in_x(n0, 0);
    for (Vertex v : di.x_out) in_x[v] = 1;
    VertexSet h_vertices = set_difference(all_vertices(n0), di.x_out);

    // Rule 1
    if (!cluster_components(induced_subgraph(g0, h_vertices)))
        throw std::invalid_argument("disjoint ucvd: G - X_out must be a cluster graph");
    auto xcl = cluster_components(induced_subgraph(g0, di.x_out));
    if (!xcl) return std::nullopt;
    std::vector<int> xclique_of(n0, -1);
    for (std::size_t i = 0; i < xcl->size(); ++i)
        for (Vertex v : (*xcl)[i]) xclique_of[di.x_out[v]] = static_cast<int>(i);

    // Rule 2: an H vertex seeing two different X_out cliques must go
    VertexSet forced;
    for (Vertex v : h_vertices) {
        int first = -1;
        for (Vertex w : g0.neighbors(v)) {
            if (xclique_of[w] < 0) continue;
            if (first < 0) first = xclique_of[w];
            else if (xclique_of[w] != first) {
                forced.push_back(v);
                break;
            }
        }
    }
    if (stats) stats->forced_rule2 += static_cast<long long>(forced.size());
    if (static_cast<int>(forced.size()) > di.k) return std::nullopt;

    VertexSet alive = set_difference(all_vertices(n0), forced);
    auto survivors_uniform = [&](const VertexSet& del) {
        return is_uniform_cluster(induced_subgraph(g0, set_difference(all_vertices(n0), del))).has_value();
    };

    CliqueList xcliques;  // in g0 ids
    for (const auto& c : *xcl) {
        VertexSet cc;
        for (Vertex v : c) cc.push_back(di.x_out[v]);
        xcliques.push_back(cc);
    }

    for (int kp = static_cast<int>(forced.size()); kp <= di.k; ++kp) {
        for (int c = 1; c <= n0; ++c) {
            if (stats) ++stats->guesses;
            if (std::any_of(xcliques.begin(), xcliques.end(), [&](const VertexSet& x) { return static_cast<int>(x.size()) > c; }))
                continue;
            // Rule 3: finished X_out cliques of size c lose their whole neighbourhood
            VertexSet deleted = forced;
            std::vector<char> finished(xcliques.size(), 0);
            for (std::size_t i = 0; i < xcliques.size(); ++i) {
                if (static_cast<int>(xcliques[i].size()) != c) continue;
                finished[i] = 1;
                for (Vertex v : xcliques[i]) deleted = set_union(deleted, set_difference(g0.neighbors(v), xcliques[i]));
            }
            // a finished clique adjacent to X_out outside itself cannot be isolated
            bool bad = false;
            for (Vertex v : deleted) bad |= in_x[v] != 0;
            if (bad) continue;
            const int r = kp - static_cast<int>(deleted.size());
            if (r < 0) continue;

            std::vector<char> gone(n0, 0);
            for (Vertex v : deleted) gone[v] = 1;
            CliqueList open_x;
            for (std::size_t i = 0; i < xcliques.size(); ++i)
                if (!finished[i]) open_x.push_back(xcliques[i]);
                else for (Vertex v : xcliques[i]) gone[v] = 1;
            CliqueList hcl;
            {
                VertexSet hv;
                for (Vertex v : h_vertices)
                    if (!gone[v]) hv.push_back(v);
                for (const auto& comp : connected_components(induced_subgraph(g0, hv))) {
                    VertexSet cc;
                    for (Vertex v : comp) cc.push_back(hv[v]);
                    hcl.push_back(cc);
                }
            }
            int remaining = 0;
            for (Vertex v = 0; v < n0; ++v) remaining += !gone[v];
            if ((remaining - r) % c != 0) continue;
            const int p = (remaining - r) / c;
            if (p < static_cast<int>(open_x.size())) continue;
            auto cm = build_completion_matching(g0, open_x, hcl, c, p);
            if (!cm.saturated) continue;

            // reconstruct: keep donors for matched cliques, delete every other H vertex
            std::vector<char> keep(n0, 0);
            VertexSet x_open_all;
            for (const auto& ca : open_x) x_open_all = set_union(x_open_all, ca);
            for (int a = 0; a < p; ++a) {
                const VertexSet& cb = hcl[cm.match_of_a[a]];
                int need;
                std::vector<Vertex> pick;
                if (a < static_cast<int>(open_x.size())) {
                    const VertexSet& ca = open_x[a];
                    need = c - static_cast<int>(ca.size());
                    for (Vertex v : cb)
                        if (std::includes(g0.neighbors(v).begin(), g0.neighbors(v).end(), ca.begin(), ca.end())) pick.push_back(v);
                } else {
                    need = c;
                    for (Vertex v : cb)
                        if (set_intersection(g0.neighbors(v), x_open_all).empty()) pick.push_back(v);
                }
                for (int i = 0; i < need; ++i) keep[pick[i]] = 1;
            }
            VertexSet result = deleted;
            for (const auto& cb : hcl)
                for (Vertex v : cb)
                    if (!keep[v]) result.push_back(v);
            std::sort(result.begin(), result.end());
            if (static_cast<int>(result.size()) != kp || !survivors_uniform(result)) continue;
            if (stats) {
                if (p > static_cast<int>(open_x.size())) ++stats->used_dummy;
                if (std::find(finished.begin(), finished.end(), 1) != finished.end()) ++stats->used_finished;
            }
            return result;
        }
    }
    return std::nullopt;
}

struct UcvdSolveOptions {
    int threads = 1;
};

inline std::optional<Witness> solve_ucvd(const Graph& g, int k, const UcvdSolveOptions& opt = {}) {
    if (k < 0) return std::nullopt;
    auto x = cvd_branching(g, k);
    if (!x) return std::nullopt;
    const std::size_t guesses = std::size_t{1} << x->size();

    auto evaluate = [&](std::size_t mask) -> std::optional<VertexSet> {
        VertexSet x_in, x_rest;
        for (std::size_t i = 0; i < x->size(); ++i) ((mask >> i & 1) ? x_in : x_rest).push_back((*x)[i]);
        if (static_cast<int>(x_in.size()) > k) return std::nullopt;
        VertexSet keep = set_difference(all_vertices(g.n()), x_in);
        std::vector<int> pos(g.n(), -1);
        for (std::size_t i = 0; i < keep.size(); ++i) pos[keep[i]] = static_cast<int>(i);
        DisjointInstance di{induced_subgraph(g, keep), {}, k - static_cast<int>(x_in.size())};
        for (Vertex v : x_rest) di.x_out.push_back(pos[v]);
        auto sub = solve_disjoint_ucvd(di);
        if (!sub) return std::nullopt;
        VertexSet out = x_in;
        for (Vertex v : *sub) out.push_back(keep[v]);
        std::sort(out.begin(), out.end());
        return out;
    };

    std::optional<VertexSet> found;
    if (opt.threads <= 1) {
        for (std::size_t mask = 0; mask < guesses && !found; ++mask) found = evaluate(mask);
    } else {
        // workers pull guesses in order; the lowest successful mask wins so results stay deterministic
        std::atomic<std::size_t> next{0};
        std::atomic<std::size_t> best_mask{guesses};
        std::mutex mu;
        std::vector<std::jthread> pool;
        for (int t = 0; t < opt.threads; ++t)
            pool.emplace_back([&] {
                for (std::size_t mask = next++; mask < guesses && mask < best_mask.load(); mask = next++) {
                    auto r = evaluate(mask);
                    if (!r) continue;
                    std::lock_guard lock(mu);
                    if (mask < best_mask.load()) {
                        best_mask = mask;
                        found = r;
                    }
                }
            });
        pool.clear();
    }
    if (!found) return std::nullopt;
    return Witness{Variant::ucvd, *found, {}, {}};
}

}  // namespace ucg
