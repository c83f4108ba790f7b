#pragma once

#include <climits>
#include <stop_token>

#include "family.hpp"

namespace ucg {

class CapacityError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Cancelled : public std::runtime_error {
public:
    Cancelled() : std::runtime_error("search cancelled") {}
};

struct OracleOptions {
    bool override_guard = false;
    std::stop_token stop;
};

struct OracleAnswer {
    bool yes = false;
    std::optional<Witness> witness;  // minimum-size witness when yes
    std::optional<int> optimum;      // minimum modification count, when it is ≤ k
    std::optional<CliqueFamily> family;  // splitting variants: the family behind the witness
};

enum class EdgeMode { remove, add, edit };

inline Variant variant_of(EdgeMode m) {
    return m == EdgeMode::remove ? Variant::uced : m == EdgeMode::add ? Variant::ucea : Variant::ucee;
}

// Documented guards; callers can pass override_guard to go beyond them.
struct OracleGuards {
    static constexpr int ucvd_vertices = 14;
    static constexpr int edge_vertices = 14;
    static constexpr int ucevs_vertices = 10;
    static constexpr int ucivs_vertices = 10;
    static constexpr int cut_vertices = 14;
};

namespace detail {

inline void guard(const char* what, int n, int limit, const OracleOptions& o) {
    if (!o.override_guard && n > limit)
        throw CapacityError(std::string(what) + ": " + std::to_string(n) + " vertices exceeds the brute-force guard of " +
                            std::to_string(limit) + " (use an fpt/kernel method or override the guard)");
}

inline void poll(const OracleOptions& o) {
    if (o.stop.stop_requested()) throw Cancelled();
}

}  // namespace detail

inline OracleAnswer oracle_ucvd(const Graph& g, int k, const OracleOptions& opt = {}) {
    detail::guard("oracle_ucvd", g.n(), OracleGuards::ucvd_vertices, opt);
    const int n = g.n();
    for (int size = 0; size <= std::min(k, n); ++size) {
        std::vector<int> idx(size);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            detail::poll(opt);
            VertexSet del(idx.begin(), idx.end());
            if (is_uniform_cluster(induced_subgraph(g, set_difference(all_vertices(n), del)))) {
                Witness w{Variant::ucvd, del, {}, {}};
                return {true, w, size, std::nullopt};
            }
            int i = size - 1;
            while (i >= 0 && idx[i] == n - size + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return {false, std::nullopt, std::nullopt, std::nullopt};
}

namespace detail {

// Enumerates partitions of V into equal blocks and keeps the cheapest admissible target.
struct UniformTargetSearch {
    const Graph& g;
    EdgeMode mode;
    const OracleOptions& opt;
    int c = 1;
    long long bound = 0;  // accept cost ≤ bound
    std::vector<int> block;  // vertex -> block index, -1 unassigned
    std::vector<VertexSet> blocks;
    long long best = LLONG_MAX;
    std::vector<VertexSet> best_blocks;

    void run(long long cost) {
        poll(opt);
        Vertex first = -1;
        for (Vertex v = 0; v < g.n(); ++v)
            if (block[v] < 0) {
                first = v;
                break;
            }
        if (first < 0) {
            if (cost < best) {
                best = cost;
                best_blocks = blocks;
                bound = std::min(bound, cost - 1);
            }
            return;
        }
        VertexSet pool;
        for (Vertex v = first + 1; v < g.n(); ++v)
            if (block[v] < 0) pool.push_back(v);
        VertexSet chosen{first};
        choose(pool, 0, chosen, cost);
    }

    void choose(const VertexSet& pool, std::size_t from, VertexSet& chosen, long long cost) {
        if (static_cast<int>(chosen.size()) == c) {
            long long inside = 0, cross = 0;
            for (std::size_t i = 0; i < chosen.size(); ++i)
                for (std::size_t j = i + 1; j < chosen.size(); ++j)
                    if (!g.has_edge(chosen[i], chosen[j])) ++inside;
            const int id = static_cast<int>(blocks.size());
            for (Vertex v : chosen) block[v] = id;
            for (Vertex v : chosen)
                for (Vertex w : g.neighbors(v))
                    if (block[w] < 0) ++cross;
            bool ok = !(mode == EdgeMode::remove && inside > 0) && !(mode == EdgeMode::add && cross > 0);
            if (ok && cost + inside + cross <= bound) {
                blocks.push_back(chosen);
                run(cost + inside + cross);
                blocks.pop_back();
            }
            for (Vertex v : chosen) block[v] = -1;
            return;
        }
        const std::size_t need = c - chosen.size();
        for (std::size_t i = from; i + need <= pool.size(); ++i) {
            chosen.push_back(pool[i]);
            choose(pool, i + 1, chosen, cost);
            chosen.pop_back();
        }
    }
};

}  // namespace detail

inline OracleAnswer oracle_edge(const Graph& g, int k, EdgeMode mode, const OracleOptions& opt = {}) {
    detail::guard("oracle_edge", g.n(), OracleGuards::edge_vertices, opt);
    const Variant var = variant_of(mode);
    if (k < 0) return {};
    if (g.n() == 0) return {true, Witness{var, {}, {}, {}}, 0, std::nullopt};
    detail::UniformTargetSearch s{g, mode, opt};
    s.bound = k;
    s.block.assign(g.n(), -1);
    std::vector<VertexSet> best_blocks;
    long long best = LLONG_MAX;
    for (int c = 1; c <= g.n(); ++c) {
        if (g.n() % c) continue;
        s.c = c;
        s.best = LLONG_MAX;
        s.run(0);
        if (s.best < best) {
            best = s.best;
            best_blocks = s.best_blocks;
        }
    }
    if (best == LLONG_MAX) return {};
    std::vector<int> blk(g.n());
    for (std::size_t i = 0; i < best_blocks.size(); ++i)
        for (Vertex v : best_blocks[i]) blk[v] = static_cast<int>(i);
    Witness w{var, {}, {}, {}};
    for (Vertex u = 0; u < g.n(); ++u)
        for (Vertex v = u + 1; v < g.n(); ++v)
            if (g.has_edge(u, v) != (blk[u] == blk[v])) w.edges.push_back({u, v});
    return {true, w, static_cast<int>(best), std::nullopt};
}

namespace detail {

// Shared recursion for edge partitions / covers with (clique size s): branch on the
// smallest edge not yet covered, over all s-cliques through it.
struct CliqueFamilySearch {
    const Graph& g;
    const OracleOptions& opt;
    bool partition = true;
    int s = 2;
    long long bound = 0;  // inclusive bound on objective
    std::vector<std::vector<int>> hits;  // cover multiplicity per pair
    std::vector<int> freq;
    std::vector<VertexSet> parts;
    long long best = LLONG_MAX;
    std::vector<VertexSet> best_parts;
    long long uncovered = 0;

    bool usable(Vertex a, Vertex b) const { return g.has_edge(a, b) && (!partition || hits[a][b] == 0); }

    void add(const VertexSet& q, int delta) {
        for (std::size_t i = 0; i < q.size(); ++i) {
            freq[q[i]] += delta;
            for (std::size_t j = i + 1; j < q.size(); ++j) {
                int& h = hits[q[i]][q[j]];
                if (delta > 0 && h == 0) --uncovered;
                h += delta;
                hits[q[j]][q[i]] = h;
                if (delta < 0 && h == 0) ++uncovered;
            }
        }
    }

    // partition: cost Σ max(0,freq-1); cover: number of cliques
    long long value() const {
        if (!partition) return static_cast<long long>(parts.size());
        long long c = 0;
        for (int f : freq) c += std::max(0, f - 1);
        return c;
    }

    bool degree_feasible() const {
        if (!partition) return true;
        for (Vertex v = 0; v < g.n(); ++v) {
            int residual = 0;
            for (Vertex w : g.neighbors(v))
                if (hits[v][w] == 0) ++residual;
            if (residual % (s - 1)) return false;
        }
        return true;
    }

    void run() {
        poll(opt);
        if (uncovered == 0) {
            long long val = value();
            if (val <= bound && val < best) {
                best = val;
                best_parts = parts;
                bound = std::min(bound, val - 1);
            }
            return;
        }
        if (value() > bound) return;
        if (!partition) {
            const long long per = static_cast<long long>(s) * (s - 1) / 2;
            if (static_cast<long long>(parts.size()) + (uncovered + per - 1) / per > bound) return;
        }
        if (!degree_feasible()) return;
        Edge e{-1, -1};
        for (Vertex u = 0; u < g.n() && e.u < 0; ++u)
            for (Vertex v : g.neighbors(u))
                if (v > u && hits[u][v] == 0) {
                    e = {u, v};
                    break;
                }
        VertexSet pool;
        for (Vertex w = 0; w < g.n(); ++w)
            if (w != e.u && w != e.v && usable(w, e.u) && usable(w, e.v)) pool.push_back(w);
        VertexSet q{e.u, e.v};
        extend(pool, 0, q);
    }

    void extend(const VertexSet& pool, std::size_t from, VertexSet& q) {
        if (static_cast<int>(q.size()) == s) {
            VertexSet part = q;
            std::sort(part.begin(), part.end());
            add(part, +1);
            parts.push_back(part);
            run();
            parts.pop_back();
            add(part, -1);
            return;
        }
        for (std::size_t i = from; i < pool.size(); ++i) {
            bool ok = true;
            for (std::size_t j = 2; j < q.size() && ok; ++j) ok = usable(pool[i], q[j]);
            if (!ok) continue;
            q.push_back(pool[i]);
            extend(pool, i + 1, q);
            q.pop_back();
        }
    }
};

inline std::optional<OracleAnswer> degenerate_split_case(const Graph& g, Variant var) {
    if (g.m() == 0) {
        Witness w{var, {}, {}, {}};
        return OracleAnswer{true, w, 0, CliqueFamily{var == Variant::ucevs ? FamilyKind::partition : FamilyKind::cover, {}}};
    }
    for (Vertex v = 0; v < g.n(); ++v)
        if (g.degree(v) == 0) return OracleAnswer{};  // splits never remove edges or isolated vertices
    return std::nullopt;
}

}  // namespace detail

inline OracleAnswer oracle_ucevs(const Graph& g, int k, const OracleOptions& opt = {}) {
    detail::guard("oracle_ucevs", g.n(), OracleGuards::ucevs_vertices, opt);
    if (k < 0) return {};
    if (auto d = detail::degenerate_split_case(g, Variant::ucevs)) return *d;
    long long best = LLONG_MAX;
    std::vector<VertexSet> best_parts;
    for (int s = 2; s <= g.n(); ++s) {
        const long long per = static_cast<long long>(s) * (s - 1) / 2;
        if (static_cast<long long>(g.m()) % per) continue;
        detail::CliqueFamilySearch search{g, opt};
        search.partition = true;
        search.s = s;
        search.bound = std::min<long long>(k, best == LLONG_MAX ? k : best - 1);
        search.hits.assign(g.n(), std::vector<int>(g.n(), 0));
        search.freq.assign(g.n(), 0);
        search.uncovered = static_cast<long long>(g.m());
        search.run();
        if (search.best < best) {
            best = search.best;
            best_parts = search.best_parts;
        }
    }
    if (best == LLONG_MAX) return {};
    CliqueFamily fam{FamilyKind::partition, best_parts};
    Witness w{Variant::ucevs, {}, {}, partition_to_splits(g, fam)};
    return {true, w, static_cast<int>(best), fam};
}

inline OracleAnswer oracle_ucivs(const Graph& g, int k, const OracleOptions& opt = {}) {
    detail::guard("oracle_ucivs", g.n(), OracleGuards::ucivs_vertices, opt);
    if (k < 0) return {};
    if (auto d = detail::degenerate_split_case(g, Variant::ucivs)) return *d;
    long long best = LLONG_MAX;  // best number of extra vertices = weight - n
    std::vector<VertexSet> best_parts;
    for (int s = 2; s <= g.n(); ++s) {
        bool ok = true;
        for (Vertex v = 0; v < g.n() && ok; ++v) ok = g.degree(v) >= s - 1;
        if (!ok) continue;
        const long long budget = std::min<long long>(k, best == LLONG_MAX ? k : best - 1);
        detail::CliqueFamilySearch search{g, opt};
        search.partition = false;
        search.s = s;
        search.bound = (g.n() + budget) / s;  // number of cliques allowed
        search.hits.assign(g.n(), std::vector<int>(g.n(), 0));
        search.freq.assign(g.n(), 0);
        search.uncovered = static_cast<long long>(g.m());
        search.run();
        if (search.best == LLONG_MAX) continue;
        const long long extra = search.best * s - g.n();
        if (extra < best) {
            best = extra;
            best_parts = search.best_parts;
        }
    }
    if (best == LLONG_MAX) return {};
    CliqueFamily fam{FamilyKind::cover, best_parts};
    Witness w{Variant::ucivs, {}, {}, cover_to_splits(g, fam)};
    return {true, w, static_cast<int>(best), fam};
}

inline OracleAnswer oracle(const Graph& g, int k, Variant var, const OracleOptions& opt = {}) {
    switch (var) {
        case Variant::ucvd: return oracle_ucvd(g, k, opt);
        case Variant::uced: return oracle_edge(g, k, EdgeMode::remove, opt);
        case Variant::ucea: return oracle_edge(g, k, EdgeMode::add, opt);
        case Variant::ucee: return oracle_edge(g, k, EdgeMode::edit, opt);
        case Variant::ucevs: return oracle_ucevs(g, k, opt);
        case Variant::ucivs: return oracle_ucivs(g, k, opt);
    }
    return {};
}

// ---- d-way cut ----

struct CutResult {
    EdgeSet edges;
    std::vector<VertexSet> parts;
};

inline std::optional<CutResult> oracle_dway_cut(const Graph& g, int d, long long budget, const OracleOptions& opt = {}) {
    if (d < 1 || d > g.n()) throw std::invalid_argument("oracle_dway_cut: need 1 <= d <= |V|");
    detail::guard("oracle_dway_cut", g.n(), OracleGuards::cut_vertices, opt);
    const int n = g.n();
    std::vector<int> cls(n, -1);
    std::vector<int> best_cls;
    long long best = LLONG_MAX;
    long long bound = budget;

    auto connected_classes = [&]() {
        for (int c = 0; c < d; ++c) {
            VertexSet members;
            for (Vertex v = 0; v < n; ++v)
                if (cls[v] == c) members.push_back(v);
            if (!is_connected(induced_subgraph(g, members))) return false;
        }
        return true;
    };

    auto rec = [&](auto&& self, Vertex v, int used, long long cut) -> void {
        detail::poll(opt);
        if (cut > bound) return;
        if (d - used > n - v) return;
        if (v == n) {
            if (used == d && connected_classes()) {
                best = cut;
                best_cls = cls;
                bound = cut - 1;
            }
            return;
        }
        for (int c = 0; c <= std::min(used, d - 1); ++c) {
            long long add = 0;
            for (Vertex w : g.neighbors(v))
                if (w < v && cls[w] != c) ++add;
            cls[v] = c;
            self(self, v + 1, std::max(used, c + 1), cut + add);
            cls[v] = -1;
        }
    };
    rec(rec, 0, 0, 0);
    if (best == LLONG_MAX) return std::nullopt;
    CutResult r;
    r.parts.assign(d, {});
    for (Vertex v = 0; v < n; ++v) r.parts[best_cls[v]].push_back(v);
    for (Edge e : g.edges())
        if (best_cls[e.u] != best_cls[e.v]) r.edges.push_back(e);
    return r;
}

}  // namespace ucg
