#pragma once

#include "kernel.hpp"
#include "oracle.hpp"

namespace ucg {

struct DegreeProfile {
    int d = 0;
    VertexSet deviants;       // degree != d
    bool large_case = false;  // d at or above the variant's threshold
};

struct PreparedProfile {
    enum class Kind { profile, no, small } kind = Kind::small;
    DegreeProfile profile;
};

// Case thresholds: edit d ≥ 6k, delete d ≥ 2k, add d ≥ k+1.
inline bool edge_large_case(EdgeMode mode, int d, int k) {
    switch (mode) {
        case EdgeMode::edit: return d >= 6 * k;
        case EdgeMode::remove: return d >= 2 * k;
        case EdgeMode::add: return d >= k + 1;
    }
    return false;
}

// At most 2k vertices are touched by k edits, so a yes-instance with more than 4k vertices has a
// unique degree d shared by at least |V| - 2k vertices; d + 1 is then the only possible clique size.
inline PreparedProfile prepare_degree_profile(const Graph& g, int k, EdgeMode mode = EdgeMode::edit) {
    PreparedProfile out;
    if (static_cast<long long>(g.n()) <= 4LL * k) return out;
    std::vector<int> count(g.n() + 1, 0);
    for (Vertex v = 0; v < g.n(); ++v) ++count[g.degree(v)];
    int d = -1;
    for (int deg = 0; deg <= g.n(); ++deg)
        if (count[deg] >= g.n() - 2 * k) d = deg;
    if (d < 0) {
        out.kind = PreparedProfile::Kind::no;
        return out;
    }
    out.kind = PreparedProfile::Kind::profile;
    out.profile.d = d;
    for (Vertex v = 0; v < g.n(); ++v)
        if (g.degree(v) != d) out.profile.deviants.push_back(v);
    out.profile.large_case = edge_large_case(mode, d, k);
    return out;
}

inline long long ucee_kernel_bound(long long k) { return 45 * k * k + 12 * k - 1; }
inline long long uced_kernel_bound(long long k) { return 6 * k; }
inline long long ucea_kernel_bound(long long k) { return 5 * k; }

namespace detail {

inline int count_deviants(const Graph& g, int d) {
    int c = 0;
    for (Vertex v = 0; v < g.n(); ++v) c += g.degree(v) != d;
    return c;
}

// Components of g that are cliques of exactly `size` vertices.
inline CliqueList isolated_cliques(const Graph& g, int size) {
    CliqueList out;
    for (const auto& comp : connected_components(g))
        if (static_cast<int>(comp.size()) == size && is_clique(g, comp)) out.push_back(comp);
    return out;
}

// Drop all but `keep` isolated cliques of the target size; true if anything was removed.
inline bool retain_isolated_cliques(KernelRun& run, int size, long long keep, const std::string& rule) {
    auto cl = isolated_cliques(run.g, size);
    if (static_cast<long long>(cl.size()) <= keep) return false;
    VertexSet drop;
    for (std::size_t i = static_cast<std::size_t>(keep); i < cl.size(); ++i) drop.insert(drop.end(), cl[i].begin(), cl[i].end());
    run.remove_vertices(drop, rule, 0, false);
    return true;
}

inline std::optional<KernelOutcome> start_edge_kernel(KernelRun& run, EdgeMode mode, PreparedProfile& prep) {
    if (run.k < 0) return run.decide(Decision::no, "BUDGET");
    if (is_uniform_cluster(run.g)) return run.decide(Decision::yes, "UNIFORM");
    prep = prepare_degree_profile(run.g, run.k, mode);
    if (prep.kind == PreparedProfile::Kind::small) return run.reduce("SMALL", true);
    if (prep.kind == PreparedProfile::Kind::no) return run.decide(Decision::no, "PREP");
    return std::nullopt;
}

}  // namespace detail

inline KernelOutcome kernelize_ucee(const Graph& input, int k, const KernelOptions& opt = {}) {
    detail::KernelRun run(input, k, Variant::ucee, opt);
    run.snapshot();
    PreparedProfile prep;
    if (auto done = detail::start_edge_kernel(run, EdgeMode::edit, prep)) return std::move(*done);
    const int d = prep.profile.d;
    const bool large = prep.profile.large_case;

    while (true) {
        const Graph& g = run.g;
        const int kk = run.k;
        if (kk < 0) return run.decide(Decision::no, "BUDGET");
        if (is_uniform_cluster(g)) return run.decide(Decision::yes, "UNIFORM");
        if (g.n() > 0 && (min_degree(g) < d - kk || max_degree(g) > d + kk)) return run.decide(Decision::no, "EEER0");
        if (detail::count_deviants(g, d) > 2 * kk) return run.decide(Decision::no, "EEER01");
        auto packing = maximal_p3_packing(g);
        if (packing.size() > static_cast<std::size_t>(kk)) return run.decide(Decision::no, "PACKING");

        VertexSet S;
        for (const auto& p : packing) S.insert(S.end(), p.begin(), p.end());
        std::sort(S.begin(), S.end());
        VertexSet rest = set_difference(all_vertices(g.n()), S);
        CliqueList cliques;
        std::vector<int> clique_of(g.n(), -1);
        for (const auto& comp : connected_components(induced_subgraph(g, rest))) {
            VertexSet c;
            for (Vertex v : comp) c.push_back(rest[v]);
            for (Vertex v : c) clique_of[v] = static_cast<int>(cliques.size());
            cliques.push_back(std::move(c));
        }

        if (!large) {
            // EEER6: isolated (d+1)-cliques beyond 2k+1 carry no information
            if (detail::retain_isolated_cliques(run, d + 1, 2LL * kk + 1, "EEER6")) continue;
            if (static_cast<long long>(g.n()) > ucee_kernel_bound(kk)) return run.decide(Decision::no, "EEER-size");
            return run.reduce("CASE2");
        }

        for (const auto& c : cliques)
            if (static_cast<int>(c.size()) <= 2 * kk) return run.decide(Decision::no, "C2K");

        // EEER1 / EEER2: every S-vertex ends up fully inside or fully outside each clique
        bool fired = false;
        for (Vertex s : S) {
            for (const auto& c : cliques) {
                VertexSet adj = set_intersection(c, g.neighbors(s));
                const int a = static_cast<int>(adj.size());
                const int na = static_cast<int>(c.size()) - a;
                if (a >= kk + 1 && na > 0) {
                    if (na > kk) return run.decide(Decision::no, "EEER1");
                    EdgeSet add;
                    for (Vertex v : set_difference(c, adj)) add.push_back(make_edge(s, v));
                    run.edit_edges(add, "EEER1");
                    fired = true;
                } else if (na >= kk + 1 && a > 0) {
                    if (a > kk) return run.decide(Decision::no, "EEER2");
                    EdgeSet del;
                    for (Vertex v : adj) del.push_back(make_edge(s, v));
                    run.edit_edges(del, "EEER2");
                    fired = true;
                }
                if (fired) break;
            }
            if (fired) break;
        }
        if (fired) continue;

        // which clique each S-vertex is attached to (all-or-nothing by now)
        std::vector<int> home(g.n(), -1);
        for (Vertex s : S) {
            for (Vertex w : g.neighbors(s)) {
                if (clique_of[w] < 0) continue;
                if (home[s] >= 0 && home[s] != clique_of[w]) return run.decide(Decision::no, "EEER3");
                home[s] = clique_of[w];
            }
        }
        for (std::size_t i = 0; i < S.size() && !fired; ++i)
            for (std::size_t j = i + 1; j < S.size() && !fired; ++j) {
                const Vertex a = S[i], b = S[j];
                if (home[a] < 0 || home[b] < 0) continue;
                if (home[a] == home[b] && !g.has_edge(a, b)) {
                    run.edit_edges({make_edge(a, b)}, "EEER4");
                    fired = true;
                } else if (home[a] != home[b] && g.has_edge(a, b)) {
                    run.edit_edges({make_edge(a, b)}, "EEER5");
                    fired = true;
                }
            }
        if (fired) continue;
        return run.decide(Decision::no, "FIXPOINT");
    }
}

inline KernelOutcome kernelize_uced(const Graph& input, int k, const KernelOptions& opt = {}) {
    detail::KernelRun run(input, k, Variant::uced, opt);
    run.snapshot();
    PreparedProfile prep;
    if (auto done = detail::start_edge_kernel(run, EdgeMode::remove, prep)) return std::move(*done);
    const int d = prep.profile.d;

    while (true) {
        const Graph& g = run.g;
        const int kk = run.k;
        if (kk < 0) return run.decide(Decision::no, "BUDGET");
        if (is_uniform_cluster(g)) return run.decide(Decision::yes, "UNIFORM");
        if (g.n() > 0 && (min_degree(g) < d || max_degree(g) > d + kk)) return run.decide(Decision::no, "EED1");
        if (detail::count_deviants(g, d) > 2 * kk) return run.decide(Decision::no, "EED2");
        // EED3: a degree-d vertex keeps all its edges, so N[u] is its final cluster
        for (Vertex u = 0; u < g.n(); ++u)
            if (g.degree(u) == d && !is_clique(g, closed_neighborhood(g, u))) return run.decide(Decision::no, "EED3");
        // EED4: a heavier neighbour of such a u loses every edge leaving N[u]
        bool fired = false;
        for (Vertex u = 0; u < g.n() && !fired; ++u) {
            if (g.degree(u) != d) continue;
            const VertexSet nu = closed_neighborhood(g, u);
            for (Vertex v : g.neighbors(u)) {
                if (g.degree(v) <= d) continue;
                EdgeSet del;
                for (Vertex w : set_difference(g.neighbors(v), nu)) del.push_back(make_edge(v, w));
                if (static_cast<int>(del.size()) > kk) return run.decide(Decision::no, "EED4");
                run.edit_edges(del, "EED4");
                fired = true;
                break;
            }
        }
        if (fired) continue;
        // EED5: x isolated (d+1)-cliques with x(d+1) ≥ 2k+1 are enough to pin the clique size
        const long long x = (2LL * kk + 1 + d) / (d + 1);
        if (detail::retain_isolated_cliques(run, d + 1, x, "EED5")) continue;
        if (edge_large_case(EdgeMode::remove, d, kk)) return run.decide(Decision::no, "FIXPOINT");
        if (g.n() > uced_kernel_bound(kk)) throw std::logic_error("uced kernel: size bound violated");
        return run.reduce("CASE2");
    }
}

inline KernelOutcome kernelize_ucea(const Graph& input, int k, const KernelOptions& opt = {}) {
    detail::KernelRun run(input, k, Variant::ucea, opt);
    run.snapshot();
    PreparedProfile prep;
    if (auto done = detail::start_edge_kernel(run, EdgeMode::add, prep)) return std::move(*done);
    const int d = prep.profile.d;

    while (true) {
        const Graph& g = run.g;
        const int kk = run.k;
        if (kk < 0) return run.decide(Decision::no, "BUDGET");
        if (is_uniform_cluster(g)) return run.decide(Decision::yes, "UNIFORM");
        if (g.n() > 0 && (min_degree(g) < d - kk || max_degree(g) > d)) return run.decide(Decision::no, "EEA1");
        if (detail::count_deviants(g, d) > 2 * kk) return run.decide(Decision::no, "EEA2");
        // EEA3: additions never separate a component, so each one is completed to a clique
        bool fired = false;
        for (const auto& comp : connected_components(g)) {
            EdgeSet add;
            for (std::size_t i = 0; i < comp.size(); ++i)
                for (std::size_t j = i + 1; j < comp.size(); ++j)
                    if (!g.has_edge(comp[i], comp[j])) add.push_back(make_edge(comp[i], comp[j]));
            if (add.empty()) continue;
            if (static_cast<int>(add.size()) > kk) return run.decide(Decision::no, "EEA3");
            run.edit_edges(add, "EEA3");
            fired = true;
            break;
        }
        if (fired) continue;
        const long long x = (2LL * kk + 1 + d) / (d + 1);
        if (detail::retain_isolated_cliques(run, d + 1, x, "EEA4")) continue;
        // every component is now a clique of size at most d+1
        if (edge_large_case(EdgeMode::add, d, kk)) return run.decide(Decision::no, "EEA5");
        if (d == 1) {
            // only K1 and K2 remain: pair up the singletons
            VertexSet singles;
            for (Vertex v = 0; v < g.n(); ++v)
                if (g.degree(v) == 0) singles.push_back(v);
            if (singles.size() % 2 != 0 || static_cast<int>(singles.size() / 2) > kk)
                return run.decide(Decision::no, "EEA-pair");
            EdgeSet add;
            for (std::size_t i = 0; i < singles.size(); i += 2) add.push_back(make_edge(singles[i], singles[i + 1]));
            run.edit_edges(add, "EEA-pair");
            continue;
        }
        if (g.n() > ucea_kernel_bound(kk)) throw std::logic_error("ucea kernel: size bound violated");
        return run.reduce("CASE2");
    }
}

inline KernelOutcome kernelize_edge(const Graph& g, int k, EdgeMode mode, const KernelOptions& opt = {}) {
    switch (mode) {
        case EdgeMode::edit: return kernelize_ucee(g, k, opt);
        case EdgeMode::remove: return kernelize_uced(g, k, opt);
        case EdgeMode::add: return kernelize_ucea(g, k, opt);
    }
    throw std::invalid_argument("unknown edge mode");
}

}  // namespace ucg
