#pragma once

#include <functional>
#include <map>

#include "oracle.hpp"

namespace ucg {

struct ComponentSolution {
    bool feasible = false;
    EdgeSet deletions;
    std::string arm;  // which solver produced it: divisor, brute-force, path-cycle, universal
};

// Highest-score edge (ties: smallest edge), provided its score is at least 3.
inline std::optional<Edge> pick_branch_edge(const Graph& g) {
    std::optional<Edge> best;
    int best_score = 2;
    for (Edge e : g.edges()) {
        const int s = edge_score(g, e);
        if (s > best_score) {
            best_score = s;
            best = e;
        }
    }
    return best;
}

// For every induced P3 through e, the other edge of that P3.
inline EdgeSet companion_edges(const Graph& g, Edge e) {
    EdgeSet out;
    for (Vertex w : set_difference(g.neighbors(e.v), g.neighbors(e.u)))
        if (w != e.u) out.push_back(make_edge(e.v, w));
    for (Vertex w : set_difference(g.neighbors(e.u), g.neighbors(e.v)))
        if (w != e.v) out.push_back(make_edge(e.u, w));
    std::sort(out.begin(), out.end());
    return out;
}

// a-b-c-d-a with both diagonals missing
inline std::optional<std::array<Vertex, 4>> find_induced_c4(const Graph& g) {
    for (Edge e : g.edges()) {
        const Vertex a = e.u, b = e.v;
        for (Vertex c : g.neighbors(b)) {
            if (c == a || g.has_edge(a, c)) continue;
            for (Vertex d : g.neighbors(c)) {
                if (d == b || d == a || !g.has_edge(d, a) || g.has_edge(b, d)) continue;
                return std::array<Vertex, 4>{a, b, c, d};
            }
        }
    }
    return std::nullopt;
}

namespace detail {

// Exact search for a partition of V into cliques of size c; returns the parts.
inline std::optional<CliqueList> partition_into_cliques(const Graph& g, int c) {
    const int n = g.n();
    if (c <= 0 || n % c != 0) return std::nullopt;
    std::vector<char> used(n, 0);
    CliqueList parts;
    auto fill = [&](auto&& self) -> bool {
        Vertex v = 0;
        while (v < n && used[v]) ++v;
        if (v == n) return true;
        VertexSet cand;
        for (Vertex w : g.neighbors(v))
            if (!used[w]) cand.push_back(w);
        if (static_cast<int>(cand.size()) < c - 1) return false;
        VertexSet part{v};
        auto extend = [&](auto&& ext, std::size_t from) -> bool {
            if (static_cast<int>(part.size()) == c) {
                for (Vertex x : part) used[x] = 1;
                VertexSet sorted = part;
                std::sort(sorted.begin(), sorted.end());
                parts.push_back(sorted);
                if (self(self)) return true;
                parts.pop_back();
                for (Vertex x : part) used[x] = 0;
                return false;
            }
            for (std::size_t i = from; i < cand.size(); ++i) {
                const Vertex w = cand[i];
                bool ok = true;
                for (std::size_t j = 1; j < part.size() && ok; ++j) ok = g.has_edge(part[j], w);
                if (!ok) continue;
                part.push_back(w);
                if (ext(ext, i + 1)) return true;
                part.pop_back();
            }
            return false;
        };
        return extend(extend, 0);
    };
    if (!fill(fill)) return std::nullopt;
    return parts;
}

inline EdgeSet edges_outside(const Graph& g, const CliqueList& parts) {
    std::vector<int> part_of(g.n(), -1);
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (Vertex v : parts[i]) part_of[v] = static_cast<int>(i);
    EdgeSet out;
    for (Edge e : g.edges())
        if (part_of[e.u] != part_of[e.v]) out.push_back(e);
    return out;
}

// Vertex order along a connected graph of maximum degree 2 (a path or a cycle).
inline std::vector<Vertex> walk_order(const Graph& g) {
    Vertex start = 0;
    for (Vertex v = 0; v < g.n(); ++v)
        if (g.degree(v) < 2) {
            start = v;
            break;
        }
    std::vector<Vertex> order{start};
    std::vector<char> seen(g.n(), 0);
    seen[start] = 1;
    while (true) {
        Vertex next = -1;
        for (Vertex w : g.neighbors(order.back()))
            if (!seen[w]) {
                next = w;
                break;
            }
        if (next < 0) break;
        seen[next] = 1;
        order.push_back(next);
    }
    return order;
}

// All partitions of `items` into cliques of g with at most `cap` members each.
inline void for_each_clique_partition(const Graph& g, const VertexSet& items, int cap,
                                      const std::function<bool(const CliqueList&)>& visit) {
    CliqueList parts;
    auto rec = [&](auto&& self, std::size_t i) -> bool {
        if (i == items.size()) return visit(parts);
        const Vertex v = items[i];
        for (auto& p : parts) {
            if (static_cast<int>(p.size()) >= cap) continue;
            if (!std::all_of(p.begin(), p.end(), [&](Vertex w) { return g.has_edge(v, w); })) continue;
            p.push_back(v);
            if (self(self, i + 1)) return true;
            p.pop_back();
        }
        if (cap >= 1) {
            parts.push_back({v});
            if (self(self, i + 1)) return true;
            parts.pop_back();
        }
        return false;
    };
    rec(rec, 0);
}

}  // namespace detail

struct Score2Options {
    int brute_force_limit = 10;
    int max_h = 5;
};

// Exact solver for one connected component without score-3 edges or induced C4, for a fixed c.
inline ComponentSolution solve_score2_component(const Graph& comp, int c, const Score2Options& opt = {}) {
    ComponentSolution sol;
    const int n = comp.n();
    if (c <= 0 || n % c != 0) {
        sol.arm = "divisor";
        return sol;
    }
    if (n <= opt.brute_force_limit) {
        sol.arm = "brute-force";
        if (auto parts = detail::partition_into_cliques(comp, c)) {
            sol.feasible = true;
            sol.deletions = detail::edges_outside(comp, *parts);
        }
        return sol;
    }
    if (max_degree(comp) <= 2) {
        sol.arm = "path-cycle";
        const bool cycle = comp.m() == static_cast<std::size_t>(n) && n >= 3;
        if (c == 1) {
            sol.feasible = true;
            sol.deletions = comp.edges();
        } else if (c == 2) {
            // n is even here; keep every other edge along the walk
            auto order = detail::walk_order(comp);
            CliqueList parts;
            for (int i = 0; i + 1 < n; i += 2) parts.push_back(VertexSet{std::min(order[i], order[i + 1]), std::max(order[i], order[i + 1])});
            sol.feasible = true;
            sol.deletions = detail::edges_outside(comp, parts);
        } else if (c == 3 && cycle && n == 3) {
            sol.feasible = true;
        }
        return sol;
    }
    VertexSet universal, rest;
    for (Vertex v = 0; v < n; ++v) (comp.degree(v) == n - 1 ? universal : rest).push_back(v);
    if (static_cast<int>(rest.size()) <= opt.max_h) {
        sol.arm = "universal";
        const int q = static_cast<int>(universal.size());
        detail::for_each_clique_partition(comp, rest, c, [&](const CliqueList& parts) {
            int need = 0;
            for (const auto& p : parts) need += c - static_cast<int>(p.size());
            if (need > q) return false;
            CliqueList full = parts;
            std::size_t next = 0;
            for (auto& p : full) {
                while (static_cast<int>(p.size()) < c) p.push_back(universal[next++]);
                std::sort(p.begin(), p.end());
            }
            while (next < universal.size()) {
                full.emplace_back(universal.begin() + static_cast<std::ptrdiff_t>(next),
                                  universal.begin() + static_cast<std::ptrdiff_t>(next + c));
                next += c;
            }
            sol.feasible = true;
            sol.deletions = detail::edges_outside(comp, full);
            return true;
        });
        return sol;
    }
    throw std::logic_error("score-2 component outside the known classes (n=" + std::to_string(n) + ")");
}

struct UcedBranchOptions {
    Score2Options score2;
    std::stop_token stop;
};

struct UcedBranchStats {
    long long nodes = 0;
    std::map<std::pair<int, int>, long long> vectors;  // branching vector -> count
    std::map<std::string, long long> arms;            // score-2 solver arm -> count
    int chosen_c = 0;
};

namespace detail {

class UcedSearch {
public:
    UcedSearch(int c, const UcedBranchOptions& opt, UcedBranchStats& stats) : c_(c), opt_(opt), stats_(stats) {}

    std::optional<EdgeSet> run(const Graph& g) { return node(g); }

private:
    int c_;
    const UcedBranchOptions& opt_;
    UcedBranchStats& stats_;
    std::map<std::string, ComponentSolution> memo_;

    long long budget(const Graph& g) const {
        return static_cast<long long>(g.m()) - static_cast<long long>(g.n()) * (c_ - 1) / 2;
    }

    void record(int a, int b) {
        if (!((a == 1 && b >= 3) || (a == 2 && b == 2)))
            throw std::logic_error("uced branch: invalid branching vector");
        ++stats_.vectors[{a, b}];
    }

    std::optional<EdgeSet> with(const EdgeSet& del, std::optional<EdgeSet> sub) {
        if (!sub) return std::nullopt;
        EdgeSet out;
        std::set_union(del.begin(), del.end(), sub->begin(), sub->end(), std::back_inserter(out));
        return out;
    }

    std::optional<EdgeSet> node(const Graph& g) {
        ++stats_.nodes;
        if (opt_.stop.stop_requested()) throw Cancelled();
        const long long b = budget(g);
        if (b < 0) return std::nullopt;
        if (g.n() > 0 && min_degree(g) < c_ - 1) return std::nullopt;
        if (b == 0) {
            if (is_uniform_cluster(g) == c_ || g.n() == 0) return EdgeSet{};
            return std::nullopt;
        }
        if (auto e = pick_branch_edge(g)) {
            EdgeSet comp = companion_edges(g, *e);
            record(1, static_cast<int>(comp.size()));
            if (auto r = with({*e}, node(remove_edges(g, {*e})))) return r;
            if (static_cast<long long>(comp.size()) <= b) return with(comp, node(remove_edges(g, comp)));
            return std::nullopt;
        }
        if (auto q = find_induced_c4(g)) {
            record(2, 2);
            const auto [a, bb, cc, d] = *q;
            EdgeSet first{make_edge(a, bb), make_edge(cc, d)};
            EdgeSet second{make_edge(bb, cc), make_edge(d, a)};
            std::sort(first.begin(), first.end());
            std::sort(second.begin(), second.end());
            if (auto r = with(first, node(remove_edges(g, first)))) return r;
            return with(second, node(remove_edges(g, second)));
        }
        EdgeSet total;
        for (const auto& comp : connected_components(g)) {
            Graph h = induced_subgraph(g, comp);
            auto sol = solve(h);
            if (!sol.feasible) return std::nullopt;
            for (Edge e : sol.deletions) total.push_back(make_edge(comp[e.u], comp[e.v]));
        }
        std::sort(total.begin(), total.end());
        if (static_cast<long long>(total.size()) > b) return std::nullopt;
        return total;
    }

    ComponentSolution solve(const Graph& h) {
        std::string key = std::to_string(h.n()) + ':';
        for (Edge e : h.edges()) key += std::to_string(e.u) + '-' + std::to_string(e.v) + ',';
        auto it = memo_.find(key);
        if (it == memo_.end()) it = memo_.emplace(key, solve_score2_component(h, c_, opt_.score2)).first;
        ++stats_.arms[it->second.arm];
        return it->second;
    }
};

}  // namespace detail

// Deletion cost for target clique size c is fixed: m - n(c-1)/2. Sizes are tried by increasing
// cost, so the first success is a minimum solution.
inline std::optional<Witness> solve_uced(const Graph& g, int k, const UcedBranchOptions& opt = {},
                                         UcedBranchStats* stats = nullptr) {
    UcedBranchStats local;
    UcedBranchStats& st = stats ? *stats : local;
    if (k < 0) return std::nullopt;
    if (g.n() == 0) return Witness{Variant::uced, {}, {}, {}};
    std::vector<std::pair<long long, int>> order;
    for (int c = 1; c <= g.n(); ++c) {
        if (g.n() % c != 0) continue;
        const long long cost = static_cast<long long>(g.m()) - static_cast<long long>(g.n()) * (c - 1) / 2;
        if (cost >= 0 && cost <= k) order.emplace_back(cost, c);
    }
    std::sort(order.begin(), order.end());
    for (auto [cost, c] : order) {
        detail::UcedSearch search(c, opt, st);
        if (auto del = search.run(g)) {
            st.chosen_c = c;
            return Witness{Variant::uced, {}, *del, {}};
        }
    }
    return std::nullopt;
}

}  // namespace ucg
