#pragma once

#include "kernel.hpp"
#include "oracle.hpp"

namespace ucg {

inline long long split_kernel_bound(long long k) { return 4 * k; }

namespace detail {

// Forced-clique processing shared by the exclusive (edge partition) and inclusive (cover) variants.
//
// Every vertex of degree d lies in exactly one final clique, namely N[v]. More generally:
//  - partition: a vertex whose residual (not yet used) degree is exactly d forces N_res[v];
//  - cover: a live vertex with an uncovered edge and exactly d live neighbours forces its closed
//    live neighbourhood, after which it can take part in no other clique.
// When nothing is forced, every vertex still involved has degree > d (at most k of them in a
// yes-instance) and an exact search over their (d+1)-cliques finishes the job.
class SplitGreedy {
public:
    enum class Step { progress, stuck, no, finished };

    SplitGreedy(const Graph& g, int d, FamilyKind kind)
        : g_(g), d_(d), kind_(kind), n_(g.n()), open_(n_, std::vector<char>(n_, 0)), open_deg_(n_, 0), done_(n_, 0),
          freq_(n_, 0) {
        for (Edge e : g.edges()) {
            open_[e.u][e.v] = open_[e.v][e.u] = 1;
            ++open_deg_[e.u];
            ++open_deg_[e.v];
        }
    }

    const std::vector<VertexSet>& parts() const { return parts_; }
    const VertexSet& last_retired() const { return retired_; }

    Step step() {
        retired_.clear();
        return kind_ == FamilyKind::partition ? step_partition() : step_cover();
    }

    // Lower bound on the final cost given the parts taken so far, together with the residual instance.
    struct Residual {
        VertexSet vertices;  // original ids, ascending
        Graph graph;         // relabelled to 0..|vertices|-1
        long long k = 0;     // budget left for the residual instance
        bool pins_size = false;
        bool self_contained = false;
    };

    Residual residual(long long k) const {
        Residual r;
        long long base = 0;
        if (kind_ == FamilyKind::partition) {
            for (Vertex v = 0; v < n_; ++v) {
                if (open_deg_[v] > 0) {
                    r.vertices.push_back(v);
                    base += freq_[v];
                } else {
                    base += std::max(0, freq_[v] - 1);
                }
            }
            r.self_contained = true;
        } else {
            long long weight = 0;
            for (int f : freq_) weight += f;
            for (Vertex v = 0; v < n_; ++v)
                if (!done_[v] && open_deg_[v] > 0) r.vertices.push_back(v);
            base = weight - n_ + static_cast<long long>(r.vertices.size());
            r.self_contained = cover_self_contained(r.vertices);
        }
        r.k = k - base;
        std::vector<int> pos(n_, -1);
        for (std::size_t i = 0; i < r.vertices.size(); ++i) pos[r.vertices[i]] = static_cast<int>(i);
        std::vector<Edge> es;
        for (Vertex u : r.vertices)
            for (Vertex v : g_.neighbors(u))
                if (u < v && pos[v] >= 0 && open_[u][v]) es.push_back({pos[u], pos[v]});
        r.graph = Graph(static_cast<int>(r.vertices.size()), es);
        // any residual solution within budget leaves more than half the vertices unsplit; if a
        // majority-by-margin has degree d, the residual clique size is d+1 as well
        const long long a = static_cast<long long>(r.vertices.size());
        long long at_d = 0;
        for (Vertex v = 0; v < r.graph.n(); ++v) at_d += r.graph.degree(v) == d_;
        r.pins_size = a > 2 * r.k && at_d >= a - r.k;
        return r;
    }

    // Exact completion; returns the full family when its cost fits in k.
    std::optional<CliqueFamily> finish(long long k) const {
        CliqueFamily fam{kind_, parts_};
        OracleOptions opt;
        if (kind_ == FamilyKind::partition) {
            Residual r = residual(k);
            if (r.k < 0) return std::nullopt;
            if (r.graph.m() > 0) {
                auto found = search(r.graph, true, r.k, {});
                if (!found) return std::nullopt;
                for (const auto& p : *found) fam.parts.push_back(map_back(p, r.vertices));
            }
        } else {
            VertexSet live;
            for (Vertex v = 0; v < n_; ++v)
                if (!done_[v]) live.push_back(v);
            long long weight = 0;
            for (int f : freq_) weight += f;
            long long open_edges = 0;
            for (Vertex v : live) open_edges += open_deg_[v];
            if (open_edges > 0) {
                const long long allowed = k + n_ - weight;
                if (allowed < 0) return std::nullopt;
                Graph h = induced_subgraph(g_, live);
                std::vector<Edge> pre;
                for (Edge e : h.edges())
                    if (!open_[live[e.u]][live[e.v]]) pre.push_back(e);
                auto found = search(h, false, allowed / (d_ + 1), pre);
                if (!found) return std::nullopt;
                for (const auto& p : *found) fam.parts.push_back(map_back(p, live));
            }
        }
        for (auto& p : fam.parts) std::sort(p.begin(), p.end());
        std::sort(fam.parts.begin(), fam.parts.end());
        const long long cost = kind_ == FamilyKind::partition ? fam.cost(n_) : fam.weight() - n_;
        if (cost > k) return std::nullopt;
        return fam;
    }

private:
    const Graph& g_;
    int d_;
    FamilyKind kind_;
    int n_;
    std::vector<std::vector<char>> open_;  // residual (partition) or uncovered (cover) pairs
    std::vector<int> open_deg_;
    std::vector<char> done_;               // cover: vertex can join no further clique
    std::vector<int> freq_;
    std::vector<VertexSet> parts_;
    VertexSet retired_;

    static VertexSet map_back(const VertexSet& p, const VertexSet& ids) {
        VertexSet out;
        for (Vertex v : p) out.push_back(ids[v]);
        std::sort(out.begin(), out.end());
        return out;
    }

    void take(const VertexSet& c) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            ++freq_[c[i]];
            for (std::size_t j = i + 1; j < c.size(); ++j) {
                char& o = open_[c[i]][c[j]];
                if (o) {
                    o = open_[c[j]][c[i]] = 0;
                    --open_deg_[c[i]];
                    --open_deg_[c[j]];
                }
            }
        }
        parts_.push_back(c);
    }

    Step step_partition() {
        bool any_open = false;
        for (Vertex v = 0; v < n_; ++v) {
            if (open_deg_[v] % d_ != 0) return Step::no;
            any_open |= open_deg_[v] > 0;
        }
        if (!any_open) return Step::finished;
        for (Vertex u = 0; u < n_; ++u) {
            if (open_deg_[u] != d_) continue;
            VertexSet c{u};
            for (Vertex w : g_.neighbors(u))
                if (open_[u][w]) c.push_back(w);
            std::sort(c.begin(), c.end());
            for (std::size_t i = 0; i < c.size(); ++i)
                for (std::size_t j = i + 1; j < c.size(); ++j)
                    if (!open_[c[i]][c[j]]) return Step::no;
            take(c);
            for (Vertex w : c)
                if (open_deg_[w] == 0) retired_.push_back(w);
            return Step::progress;
        }
        return Step::stuck;
    }

    VertexSet live_closed_neighborhood(Vertex u) const {
        VertexSet c{u};
        for (Vertex w : g_.neighbors(u))
            if (!done_[w]) c.push_back(w);
        std::sort(c.begin(), c.end());
        return c;
    }

    // Vertices that can no longer be in a (d+1)-clique of live vertices retire; with an
    // uncovered edge left that is a contradiction.
    bool sweep() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (Vertex v = 0; v < n_; ++v) {
                if (done_[v]) continue;
                if (static_cast<int>(live_closed_neighborhood(v).size()) >= d_ + 1) continue;
                if (open_deg_[v] > 0) return false;
                done_[v] = 1;
                retired_.push_back(v);
                changed = true;
            }
        }
        return true;
    }

    Step step_cover() {
        if (!sweep()) return Step::no;
        bool any_open = false;
        for (Vertex u = 0; u < n_; ++u) {
            if (done_[u] || open_deg_[u] == 0) continue;
            any_open = true;
            VertexSet c = live_closed_neighborhood(u);
            if (static_cast<int>(c.size()) != d_ + 1) continue;
            if (!is_clique(g_, c)) return Step::no;
            take(c);
            for (Vertex w : c)
                if (live_closed_neighborhood(w) == c) {
                    done_[w] = 1;
                    retired_.push_back(w);
                }
            if (!sweep()) return Step::no;
            std::sort(retired_.begin(), retired_.end());
            return Step::progress;
        }
        return any_open ? Step::stuck : Step::finished;
    }

    // Cover residual is an independent instance only if no covered edge joins two residual
    // vertices and no other live vertex could still complete a clique around an uncovered edge.
    bool cover_self_contained(const VertexSet& res) const {
        std::vector<char> in(n_, 0);
        for (Vertex v : res) in[v] = 1;
        for (Vertex u : res)
            for (Vertex v : g_.neighbors(u))
                if (in[v] && !open_[u][v]) return false;
        for (Vertex w = 0; w < n_; ++w) {
            if (done_[w] || in[w]) continue;
            const VertexSet& nw = g_.neighbors(w);
            for (std::size_t i = 0; i < nw.size(); ++i)
                for (std::size_t j = i + 1; j < nw.size(); ++j)
                    if (open_[nw[i]][nw[j]]) return false;
        }
        return true;
    }

    std::optional<std::vector<VertexSet>> search(const Graph& h, bool partition, long long bound,
                                                 const std::vector<Edge>& precovered) const {
        OracleOptions opt;
        CliqueFamilySearch s{h, opt};
        s.partition = partition;
        s.s = d_ + 1;
        s.bound = bound;
        s.hits.assign(h.n(), std::vector<int>(h.n(), 0));
        s.freq.assign(h.n(), 0);
        s.uncovered = static_cast<long long>(h.m());
        for (Edge e : precovered) {
            s.hits[e.u][e.v] = s.hits[e.v][e.u] = 1;
            --s.uncovered;
        }
        s.run();
        if (s.best == LLONG_MAX) return std::nullopt;
        return s.best_parts;
    }
};

inline std::optional<CliqueFamily> run_split_greedy(const Graph& g, int k, int d, FamilyKind kind) {
    if (d <= 0) {
        if (g.m() == 0) return CliqueFamily{kind, {}};
        return std::nullopt;
    }
    for (Vertex v = 0; v < g.n(); ++v)
        if (g.degree(v) == 0) return std::nullopt;
    SplitGreedy greedy(g, d, kind);
    while (true) {
        const auto st = greedy.step();
        if (st == SplitGreedy::Step::no) return std::nullopt;
        if (st == SplitGreedy::Step::progress) {
            if (greedy.residual(k).k < 0) return std::nullopt;
            continue;
        }
        return greedy.finish(k);
    }
}

}  // namespace detail

// Weighted K_{d+1}-edge partition with total cost (Σ max(0, freq-1)) at most k, if one exists.
inline std::optional<CliqueFamily> greedy_kd_edge_partition(const Graph& g, int k, int d) {
    return detail::run_split_greedy(g, k, d, FamilyKind::partition);
}

// Sigma (d+1)-clique cover with weight - |V| at most k, if one exists.
inline std::optional<CliqueFamily> greedy_sigma_cover(const Graph& g, int k, int d) {
    return detail::run_split_greedy(g, k, d, FamilyKind::cover);
}

namespace detail {

inline KernelOutcome kernelize_split(const Graph& input, int k, Variant variant, const KernelOptions& opt) {
    const FamilyKind kind = variant == Variant::ucevs ? FamilyKind::partition : FamilyKind::cover;
    const std::string tag = variant == Variant::ucevs ? "EVS" : "IVS";
    KernelRun run(input, k, variant, opt);
    run.snapshot();
    const Graph& g = input;
    if (k < 0) return run.decide(Decision::no, "BUDGET");
    for (Vertex v = 0; v < g.n(); ++v)
        if (g.degree(v) == 0) return run.decide(g.m() == 0 ? Decision::yes : Decision::no, "ISOLATED");
    if (g.n() == 0) return run.decide(Decision::yes, "UNIFORM");
    if (static_cast<long long>(g.n()) <= 2LL * k) return run.reduce("SMALL", true);

    std::vector<int> count(g.n() + 1, 0);
    for (Vertex v = 0; v < g.n(); ++v) ++count[g.degree(v)];
    int d = -1;
    for (int deg = 0; deg <= g.n(); ++deg)
        if (count[deg] >= g.n() - k) d = deg;
    if (d < 0) return run.decide(Decision::no, "PREP");

    const std::string combined = "UC" + tag + "-combined";
    int high = 0;
    for (Vertex v = 0; v < g.n(); ++v) {
        if (g.degree(v) < d) return run.decide(Decision::no, combined);
        high += g.degree(v) > d;
        if (g.degree(v) == d && !is_clique(g, closed_neighborhood(g, v))) return run.decide(Decision::no, combined);
    }
    if (high > k) return run.decide(Decision::no, combined);

    const bool large = d >= 2 * k;
    SplitGreedy greedy(g, d, kind);
    while (true) {
        const auto st = greedy.step();
        if (st == SplitGreedy::Step::no) return run.decide(Decision::no, tag + "-GREEDY");
        if (st != SplitGreedy::Step::progress) {
            auto fam = greedy.finish(k);
            if (!fam) return run.decide(Decision::no, tag + "-FINISH");
            run.out.forced_family = *fam;
            return run.decide(Decision::yes, tag + "-FINISH");
        }
        auto res = greedy.residual(k);
        run.out.trace.push_back({tag + "-PART", static_cast<int>(res.k), greedy.last_retired(), {}});
        if (res.k < 0) return run.decide(Decision::no, "BUDGET");
        if (large) continue;
        if (static_cast<long long>(res.vertices.size()) <= 4 * res.k && res.pins_size && res.self_contained) {
            run.g = res.graph;
            run.origin = res.vertices;
            run.k = static_cast<int>(res.k);
            run.out.forced_family = CliqueFamily{kind, greedy.parts()};
            return run.reduce("CASE2");
        }
    }
}

}  // namespace detail

inline KernelOutcome kernelize_ucevs(const Graph& g, int k, const KernelOptions& opt = {}) {
    return detail::kernelize_split(g, k, Variant::ucevs, opt);
}

inline KernelOutcome kernelize_ucivs(const Graph& g, int k, const KernelOptions& opt = {}) {
    return detail::kernelize_split(g, k, Variant::ucivs, opt);
}

// Family on the original graph from the kernel's processed parts plus a family for the reduced instance.
inline CliqueFamily lift_split_family(const KernelOutcome& out, const CliqueFamily& reduced_family) {
    CliqueFamily fam = out.forced_family;
    fam.kind = reduced_family.kind;
    for (const auto& p : reduced_family.parts) {
        VertexSet q;
        for (Vertex v : p) q.push_back(out.origin[v]);
        std::sort(q.begin(), q.end());
        fam.parts.push_back(q);
    }
    return fam;
}

}  // namespace ucg
