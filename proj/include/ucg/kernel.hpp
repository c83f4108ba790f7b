#pragma once

#include <set>

#include "family.hpp"

namespace ucg {

enum class Decision { no, yes };

struct TraceEntry {
    std::string rule;
    int k_after = 0;
    VertexSet removed;  // original ids
    EdgeSet edits;      // original ids
};

struct KernelOptions {
    bool record_snapshots = false;  // keep (graph, k) after every rule firing
};

struct KernelOutcome {
    std::optional<Decision> decision;  // engaged: Decided; otherwise `reduced` is the kernel
    Instance reduced;
    bool small_instance = false;       // reduced is the untouched input (|V| too small to kernelize)
    std::vector<Vertex> origin;        // reduced vertex -> original vertex
    std::vector<TraceEntry> trace;
    VertexSet forced_deletions;        // ucvd, original ids
    EdgeSet forced_edits;              // edge variants, original ids (symmetric difference)
    CliqueFamily forced_family;        // split variants, original ids
    int k_before = 0;
    int n_before = 0;
    std::vector<std::pair<Graph, int>> snapshots;

    bool decided() const { return decision.has_value(); }
    bool yes() const { return decision == Decision::yes; }
};

inline std::string format_trace_line(const TraceEntry& t) {
    std::string s = t.rule + " k=" + std::to_string(t.k_after) + " removed=";
    for (std::size_t i = 0; i < t.removed.size(); ++i) s += (i ? "," : "") + std::to_string(t.removed[i] + 1);
    if (!t.edits.empty()) {
        s += " edits=";
        for (std::size_t i = 0; i < t.edits.size(); ++i)
            s += (i ? "," : "") + std::to_string(t.edits[i].u + 1) + "-" + std::to_string(t.edits[i].v + 1);
    }
    return s;
}

inline std::string format_trace(const std::vector<TraceEntry>& trace) {
    std::string s;
    for (const auto& t : trace) s += format_trace_line(t) + '\n';
    return s;
}

namespace detail {

// Mutable working copy used by every kernel: current graph plus the map back to input ids.
struct KernelRun {
    Graph g;
    std::vector<Vertex> origin;
    int k;
    Variant variant;
    KernelOptions opt;
    KernelOutcome out;

    KernelRun(const Graph& input, int k0, Variant var, const KernelOptions& o)
        : g(input), origin(all_vertices(input.n())), k(k0), variant(var), opt(o) {
        out.k_before = k0;
        out.n_before = input.n();
    }

    VertexSet to_original(const VertexSet& local) const {
        VertexSet r;
        for (Vertex v : local) r.push_back(origin[v]);
        std::sort(r.begin(), r.end());
        return r;
    }

    Edge to_original(Edge e) const { return make_edge(origin[e.u], origin[e.v]); }

    void snapshot() {
        if (opt.record_snapshots) out.snapshots.emplace_back(g, k);
    }

    // Delete vertices; `cost` is charged to k, `forced` marks them as solution vertices.
    void remove_vertices(VertexSet local, const std::string& rule, int cost, bool forced) {
        std::sort(local.begin(), local.end());
        local.erase(std::unique(local.begin(), local.end()), local.end());
        VertexSet orig = to_original(local);
        if (forced) {
            out.forced_deletions = set_union(out.forced_deletions, orig);
        }
        k -= cost;
        VertexSet keep = set_difference(all_vertices(g.n()), local);
        std::vector<Vertex> new_origin;
        for (Vertex v : keep) new_origin.push_back(origin[v]);
        g = induced_subgraph(g, keep);
        origin = std::move(new_origin);
        out.trace.push_back({rule, k, orig, {}});
        snapshot();
    }

    // Toggle pairs, each charged one unit of budget.
    void edit_edges(EdgeSet local, const std::string& rule) {
        std::sort(local.begin(), local.end());
        EdgeSet orig;
        for (Edge e : local) orig.push_back(to_original(e));
        std::sort(orig.begin(), orig.end());
        EdgeSet merged;
        std::set_symmetric_difference(out.forced_edits.begin(), out.forced_edits.end(), orig.begin(), orig.end(),
                                      std::back_inserter(merged));
        out.forced_edits = std::move(merged);
        k -= static_cast<int>(local.size());
        g = toggle_edges(g, local);
        out.trace.push_back({rule, k, {}, orig});
        snapshot();
    }

    KernelOutcome decide(Decision d, const std::string& rule) {
        out.decision = d;
        out.trace.push_back({rule, k, {}, {}});
        return std::move(out);
    }

    KernelOutcome reduce(const std::string& rule, bool small = false) {
        out.reduced = Instance{g, k, variant};
        out.origin = origin;
        out.small_instance = small;
        out.trace.push_back({rule, k, {}, {}});
        return std::move(out);
    }
};

}  // namespace detail

}  // namespace ucg
