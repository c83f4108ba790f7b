#pragma once

#include "edge_kernels.hpp"
#include "split_kernels.hpp"
#include "uced_branch.hpp"
#include "uced_dense.hpp"
#include "ucvd_kernel.hpp"
#include "ucvd_solver.hpp"

namespace ucg {

inline KernelOutcome kernelize(const Graph& g, int k, Variant var, const KernelOptions& opt = {}) {
    switch (var) {
        case Variant::ucvd: return kernelize_ucvd(g, k, opt);
        case Variant::uced: return kernelize_uced(g, k, opt);
        case Variant::ucea: return kernelize_ucea(g, k, opt);
        case Variant::ucee: return kernelize_ucee(g, k, opt);
        case Variant::ucevs: return kernelize_ucevs(g, k, opt);
        case Variant::ucivs: return kernelize_ucivs(g, k, opt);
    }
    throw std::invalid_argument("unknown variant");
}

// Documented size bound for Reduced (non-small) outcomes, in terms of the reduced budget.
inline long long kernel_bound(Variant var, long long k) {
    switch (var) {
        case Variant::ucvd: return ucvd_kernel_bound(k);
        case Variant::uced: return uced_kernel_bound(k);
        case Variant::ucea: return ucea_kernel_bound(k);
        case Variant::ucee: return ucee_kernel_bound(k);
        case Variant::ucevs:
        case Variant::ucivs: return split_kernel_bound(k);
    }
    return 0;
}

inline Witness witness_from_family(const Graph& g, const CliqueFamily& fam, Variant var) {
    return Witness{var, {}, {}, var == Variant::ucevs ? partition_to_splits(g, fam) : cover_to_splits(g, fam)};
}

// Candidate witness on the original graph: the kernel's forced part plus the reduced solution mapped back.
// Callers verify it; a kernel may shrink to an instance whose own optimum uses another clique size.
inline std::optional<Witness> lift_witness(const Graph& g, Variant var, const KernelOutcome& out,
                                           const OracleAnswer* reduced) {
    if (out.decided() && !out.yes()) return std::nullopt;
    if (!out.decided() && (!reduced || !reduced->yes)) return std::nullopt;
    Witness w;
    w.variant = var;
    if (is_split_variant(w.variant)) {
        CliqueFamily fam = out.decided() ? out.forced_family : lift_split_family(out, *reduced->family);
        if (!check_family(g, fam).empty()) return std::nullopt;
        return witness_from_family(g, fam, w.variant);
    }
    w.vertices = out.forced_deletions;
    w.edges = out.forced_edits;
    if (!out.decided()) {
        for (Vertex v : reduced->witness->vertices) w.vertices.push_back(out.origin[v]);
        std::sort(w.vertices.begin(), w.vertices.end());
        w.vertices.erase(std::unique(w.vertices.begin(), w.vertices.end()), w.vertices.end());
        EdgeSet mapped;
        for (Edge e : reduced->witness->edges) mapped.push_back(make_edge(out.origin[e.u], out.origin[e.v]));
        std::sort(mapped.begin(), mapped.end());
        EdgeSet merged;
        std::set_symmetric_difference(w.edges.begin(), w.edges.end(), mapped.begin(), mapped.end(),
                                      std::back_inserter(merged));
        w.edges = std::move(merged);
    }
    return w;
}

enum class Method { automatic, fpt, kernel_oracle, oracle, dense };

inline std::string to_string(Method m) {
    switch (m) {
        case Method::automatic: return "auto";
        case Method::fpt: return "fpt";
        case Method::kernel_oracle: return "kernel+oracle";
        case Method::oracle: return "oracle";
        case Method::dense: return "dense";
    }
    return "?";
}

inline std::optional<Method> parse_method(std::string_view s) {
    for (Method m : {Method::automatic, Method::fpt, Method::kernel_oracle, Method::oracle, Method::dense})
        if (to_string(m) == s) return m;
    return std::nullopt;
}

inline bool has_fpt(Variant v) { return v == Variant::ucvd || v == Variant::uced; }

struct SolveConfig {
    Method method = Method::automatic;
    int threads = 1;
    OracleOptions oracle;
    DenseOptions dense;
    KernelOptions kernel;
};

struct SolveReport {
    bool yes = false;
    std::optional<Witness> witness;  // verified
    std::optional<KernelOutcome> kernel;
    std::string engine;              // which engine produced the answer
};

namespace detail {

inline OracleAnswer run_fpt(const Graph& g, int k, Variant var, const SolveConfig& cfg) {
    std::optional<Witness> w;
    if (var == Variant::ucvd) {
        UcvdSolveOptions o;
        o.threads = cfg.threads;
        w = solve_ucvd(g, k, o);
    } else {
        UcedBranchOptions o;
        o.stop = cfg.oracle.stop;
        w = solve_uced(g, k, o);
    }
    OracleAnswer a;
    a.yes = w.has_value();
    a.witness = w;
    return a;
}

inline OracleAnswer run_exact(const Graph& g, int k, Variant var, const SolveConfig& cfg, bool prefer_fpt) {
    if (prefer_fpt && has_fpt(var)) return run_fpt(g, k, var, cfg);
    return oracle(g, k, var, cfg.oracle);
}

}  // namespace detail

inline SolveReport solve_instance(const Graph& g, int k, Variant var, const SolveConfig& cfg = {}) {
    SolveReport rep;
    auto finish = [&](std::optional<Witness> w, const std::string& engine) {
        rep.engine = engine;
        if (!w) return;
        std::string why;
        if (!verify_witness(g, k, *w, &why)) throw std::logic_error(engine + " produced an invalid witness: " + why);
        rep.yes = true;
        rep.witness = std::move(w);
    };
    switch (cfg.method) {
        case Method::oracle: {
            auto a = oracle(g, k, var, cfg.oracle);
            finish(a.yes ? a.witness : std::nullopt, "oracle");
            return rep;
        }
        case Method::fpt:
            if (!has_fpt(var)) throw std::invalid_argument("method fpt applies to ucvd and uced only");
            finish(detail::run_fpt(g, k, var, cfg).witness, "fpt");
            return rep;
        case Method::dense: {
            if (var != Variant::uced) throw std::invalid_argument("method dense applies to uced only");
            DenseOptions opt = cfg.dense;
            opt.fallback.stop = cfg.oracle.stop;
            finish(solve_uced_dense(g, k, opt), "dense");
            return rep;
        }
        case Method::automatic:
        case Method::kernel_oracle: break;
    }
    const bool prefer_fpt = cfg.method == Method::automatic;
    rep.kernel = kernelize(g, k, var, cfg.kernel);
    const KernelOutcome& out = *rep.kernel;
    std::optional<OracleAnswer> inner;
    std::string engine = "kernel";
    if (!out.decided()) {
        inner = detail::run_exact(out.reduced.graph, out.reduced.k, var, cfg, prefer_fpt);
        engine = prefer_fpt && has_fpt(var) ? "kernel+fpt" : "kernel+oracle";
        if (!inner->yes) {
            finish(std::nullopt, engine);
            return rep;
        }
    } else if (!out.yes()) {
        finish(std::nullopt, engine);
        return rep;
    }
    auto lifted = lift_witness(g, var, out, inner ? &*inner : nullptr);
    if (lifted && verify_witness(g, k, *lifted)) {
        finish(lifted, engine);
        return rep;
    }
    // the reduced solution did not extend; solve the original exactly for a witness
    auto direct = detail::run_exact(g, k, var, cfg, true);
    if (!direct.yes) throw std::logic_error("kernel answered yes but the exact solver found no witness");
    finish(direct.witness, engine + "/exact-witness");
    return rep;
}

}  // namespace ucg
