// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>

#include "support.hpp"
#include "ucg/ucg.hpp"

using namespace ucg;
using namespace testing_support;

namespace {

struct Tally {
    long long checked = 0;
    long long failures = 0;
    std::string first_failure;

    void check(bool ok, const std::string& what) {
        ++checked;
        if (ok) return;
        if (failures++ == 0) first_failure = what;
    }
    bool pass() const { return failures == 0 && checked > 0; }
};

OracleOptions unguarded() {
    OracleOptions o;
    o.override_guard = true;
    return o;
}

std::string describe(const Graph& g, int k) {
    std::string s = write_instance(g);
    for (char& c : s)
        if (c == '\n') c = ';';
    return s + " k=" + std::to_string(k);
}

bool kernel_then_oracle(const KernelOutcome& out, Variant var) {
    if (out.decided()) return out.yes();
    return oracle(out.reduced.graph, out.reduced.k, var, unguarded()).yes;
}

long long family_cost(const Graph& g, const CliqueFamily& fam) {
    return fam.kind == FamilyKind::partition ? fam.cost(g.n()) : fam.weight() - g.n();
}

// q intact s-cliques plus `frags` s-cliques each broken into two smaller cliques; merging a fragment pair costs a·b
std::pair<Graph, int> fragmented_cliques(Rng& rng, int q, int s, int frags) {
    std::vector<Edge> es;
    int next = 0, cost = 0;
    auto clique = [&](int size) {
        for (int i = 0; i < size; ++i)
            for (int j = i + 1; j < size; ++j) es.push_back({next + i, next + j});
        next += size;
    };
    for (int i = 0; i < q; ++i) clique(s);
    for (int i = 0; i < frags; ++i) {
        const int a = rng.range(1, s - 1);
        clique(a);
        clique(s - a);
        cost += a * (s - a);
    }
    return {Graph(next, es), cost};
}

// q s-cliques; `pairs` of them are joined by a perfect matching, so no vertex of those keeps degree s−1
std::pair<Graph, int> matched_cliques(int q, int s, int pairs) {
    std::vector<Edge> es;
    for (int c = 0; c < q; ++c)
        for (int i = 0; i < s; ++i)
            for (int j = i + 1; j < s; ++j) es.push_back({c * s + i, c * s + j});
    for (int p = 0; p < pairs; ++p)
        for (int i = 0; i < s; ++i) es.push_back({2 * p * s + i, (2 * p + 1) * s + i});
    return {Graph(q * s, es), pairs * s};
}

struct Corpora {
    std::map<Variant, std::vector<std::pair<Graph, int>>> solver, kernel, planted;
};

Corpora build_corpora() {
    Corpora c;
    for (Variant var : all_variants) {
        Rng rng(1000 + static_cast<int>(var));
        for (int rep = 0; rep < 500; ++rep) {
            const double p = (rep % 10 + 0.5) / 10.0;
            c.solver[var].emplace_back(random_graph(rng, rng.range(1, 9), p), rep % 4);
        }
        Rng rng3(3000 + static_cast<int>(var));
        for (int rep = 0; rep < 500; ++rep) {
            const int k = rng3.range(0, 3);
            Graph g;
            if (rep % 2 == 0) {
                g = random_graph(rng3, rng3.range(1, 10), rng3.unit());
            } else if (is_split_variant(var)) {
                do g = merged_cliques(rng3, rng3.range(2, 5), rng3.range(2, 3), rng3.range(0, 3), rng3.range(0, 1));
                while (g.n() > 10);
            } else {
                const int s = rng3.range(2, 5), q = rng3.range(1, 10 / s);
                const int adds = std::min(rng3.range(0, 2), q * s * (q * s - 1) / 2 - q * s * (s - 1) / 2);
                const int dels = std::min(rng3.range(0, 2), q * s * (s - 1) / 2);
                g = generate_planted(q, s, adds, dels, rng3.next());
            }
            c.kernel[var].emplace_back(g, k);
        }
        // larger planted instances, kernelized only
        Rng rngp(5000 + static_cast<int>(var));
        for (int rep = 0; rep < 150; ++rep) {
            const int k = rngp.range(1, 4);
            Graph g;
            if (is_split_variant(var)) {
                g = merged_cliques(rngp, rngp.range(4, 12), rngp.range(2, 4), rngp.range(0, k), rep % 5 == 0);
            } else {
                const int s = rngp.range(3, 8), q = rngp.range(2, 6);
                const int dels = rngp.range(0, std::min(k, 2)), adds = rngp.range(0, k - dels);
                g = generate_planted(q, s, adds, dels, rngp.next());
            }
            c.planted[var].emplace_back(g, k);
        }
        for (int rep = 0; rep < 100 && (var == Variant::ucea || var == Variant::uced); ++rep) {
            const int s = rngp.range(3, 6);
            auto [g, cost] = var == Variant::ucea ? fragmented_cliques(rngp, rngp.range(1, 8), s, rngp.range(1, 2))
                                                  : matched_cliques(rngp.range(2, 8), s, 1);
            c.planted[var].emplace_back(g, cost + rngp.range(-1, 2));
        }
    }
    return c;
}

Tally criterion1(const Corpora& c) {
    Tally t;
    for (Variant var : all_variants) {
        for (const auto& [g, k] : c.solver.at(var)) {
            const bool truth = oracle(g, k, var).yes;
            const std::string tag = to_string(var) + " " + describe(g, k);
            switch (var) {
                case Variant::ucvd: {
                    auto w = solve_ucvd(g, k);
                    t.check(w.has_value() == truth && (!w || verify_witness(g, k, *w)), "solver " + tag);
                    break;
                }
                case Variant::uced: {
                    auto w = solve_uced(g, k);
                    t.check(w.has_value() == truth && (!w || verify_witness(g, k, *w)), "branching " + tag);
                    auto d = solve_uced_dense(g, k);
                    t.check(d.has_value() == truth && (!d || verify_witness(g, k, *d)), "dense " + tag);
                    break;
                }
                default:
                    t.check(kernel_then_oracle(kernelize(g, k, var), var) == truth, "kernel+oracle " + tag);
            }
        }
    }
    return t;
}

Tally criterion2(const Corpora& c, std::map<Variant, int>& reduced) {
    Tally t;
    for (Variant var : all_variants) {
        for (const auto* corpus : {&c.solver.at(var), &c.kernel.at(var), &c.planted.at(var)}) {
            for (const auto& [g, k] : *corpus) {
                auto out = kernelize(g, k, var);
                if (out.decided() || out.small_instance) continue;
                ++reduced[var];
                t.check(out.reduced.graph.n() <= kernel_bound(var, out.reduced.k) && out.reduced.k <= k,
                        to_string(var) + " " + describe(g, k));
            }
        }
    }
    return t;
}

Tally criterion3(const Corpora& c) {
    Tally t;
    for (Variant var : all_variants)
        for (const auto& [g, k] : c.kernel.at(var))
            t.check(kernel_then_oracle(kernelize(g, k, var), var) == oracle(g, k, var).yes,
                    to_string(var) + " " + describe(g, k));
    return t;
}

Tally criterion4(std::string& detail) {
    Tally t;
    const Graph d = diamond();
    t.check(oracle_ucivs(d, 2).yes, "ucivs k=2 oracle");
    t.check(!oracle_ucivs(d, 1).yes, "ucivs k=1 oracle");
    t.check(kernel_then_oracle(kernelize_ucivs(d, 2), Variant::ucivs), "ucivs k=2 kernel");
    t.check(!kernel_then_oracle(kernelize_ucivs(d, 1), Variant::ucivs), "ucivs k=1 kernel");
    t.check(!oracle_ucevs(d, 3).yes, "ucevs k=3 oracle");
    t.check(!kernel_then_oracle(kernelize_ucevs(d, 3), Variant::ucevs), "ucevs k=3 kernel");
    auto exact = oracle_ucevs(d, 100);
    t.check(exact.yes && exact.optimum == 6, "ucevs optimum is the frozen value 6");
    t.check(exact.yes && *exact.optimum >= 4, "ucevs optimum respects the lower bound of 4");
    detail = "diamond ucevs optimum " + (exact.optimum ? std::to_string(*exact.optimum) : std::string("none"));
    return t;
}

Tally criterion5(const Corpora& c, std::string& detail) {
    Tally t;
    long long vectors = 0;
    auto check_vectors = [&](const UcedBranchStats& st, const std::string& tag) {
        for (const auto& [vec, count] : st.vectors) {
            vectors += count;
            t.check((vec.first == 1 && vec.second >= 3) || (vec.first == 2 && vec.second == 2),
                    "vector (" + std::to_string(vec.first) + "," + std::to_string(vec.second) + ") " + tag);
        }
    };
    for (const auto& [g, k] : c.solver.at(Variant::uced)) {
        UcedBranchStats st;
        solve_uced(g, k, {}, &st);
        check_vectors(st, describe(g, k));
    }
    Rng rng(77);
    double worst = 0;
    for (int k = 0; k <= 12; ++k) {
        for (int rep = 0; rep < 3; ++rep) {
            Graph g = generate_planted(4, 5, k, 0, rng.next());
            UcedBranchStats st;
            auto w = solve_uced(g, k, {}, &st);
            check_vectors(st, describe(g, k));
            const double envelope = 40.0 * std::pow(1.47, k);
            worst = std::max(worst, static_cast<double>(st.nodes) / envelope);
            t.check(w && verify_witness(g, k, *w) && static_cast<double>(st.nodes) <= envelope,
                    "planted node envelope " + describe(g, k));
        }
    }
    std::ostringstream os;
    os << vectors << " branching vectors checked, worst nodes/envelope " << worst;
    detail = os.str();
    return t;
}

Tally criterion6() {
    Tally t;
    Score2Options opt;
    opt.brute_force_limit = 6;
    auto cls = score2_class(8);
    for (int n = 1; n <= 8; ++n) {
        for (const Graph& g : cls[n]) {
            if (!is_connected(g)) continue;
            for (int c = 1; c <= n; ++c) {
                if (n % c) continue;
                const std::string tag = describe(g, c);
                try {
                    auto sol = solve_score2_component(g, c, opt);
                    bool ok = sol.feasible == feasible_by_set_partitions(g, c);
                    if (ok && sol.feasible) ok = is_uniform_cluster(remove_edges(g, sol.deletions)) == c;
                    t.check(ok, "mismatch " + tag);
                } catch (const std::logic_error&) {
                    t.check(false, "structural error arm " + tag);
                }
            }
        }
    }
    return t;
}

Tally criterion7(const Corpora& c) {
    Tally t;
    auto check_family_splits = [&](const Graph& g, int k, const CliqueFamily& fam, const std::string& tag) {
        try {
            const bool partition = fam.kind == FamilyKind::partition;
            const SplitSequence seq = partition ? partition_to_splits(g, fam) : cover_to_splits(g, fam);
            Graph cur = g;
            for (std::size_t i = 0; i < seq.size(); ++i) cur = apply_split(cur, seq[i], static_cast<int>(i));
            const long long len = static_cast<long long>(seq.size());
            const bool length_ok = partition ? len == fam.cost(g.n()) : len <= fam.weight() - g.n();
            t.check(is_uniform_cluster(cur).has_value() && length_ok && len <= k, tag);
        } catch (const WitnessError& e) {
            t.check(false, tag + " " + e.what());
        }
    };
    for (Variant var : {Variant::ucevs, Variant::ucivs}) {
        for (const auto* corpus : {&c.solver.at(var), &c.kernel.at(var), &c.planted.at(var)}) {
            for (const auto& [g, k] : *corpus) {
                const std::string tag = to_string(var) + " " + describe(g, k);
                if (g.n() <= 10) {
                    auto ans = oracle(g, k, var);
                    if (ans.yes && g.m() > 0) check_family_splits(g, k, *ans.family, "oracle " + tag);
                }
                auto out = kernelize(g, k, var);
                if (out.decided() && out.yes() && g.m() > 0) check_family_splits(g, k, out.forced_family, "kernel " + tag);
                if (!out.decided() && out.reduced.graph.n() <= 10) {
                    auto sub = oracle(out.reduced.graph, out.reduced.k, var);
                    if (sub.yes && g.m() > 0) {
                        CliqueFamily fam = lift_split_family(out, *sub.family);
                        t.check(check_family(g, fam).empty() && family_cost(g, fam) <= k, "lifted family " + tag);
                        check_family_splits(g, k, fam, "lifted " + tag);
                    }
                }
            }
        }
    }
    return t;
}

Tally criterion8(std::string& detail) {
    Tally t;
    Rng rng(808);
    DisjointStats st;
    for (int rep = 0; rep < 300; ++rep) {
        const DisjointInstance di = random_disjoint_instance(rng, 10);
        auto r = solve_disjoint_ucvd(di, &st);
        bool ok = r.has_value() == restricted_ucvd_brute_force(di);
        if (ok && r) ok = static_cast<int>(r->size()) <= di.k && set_intersection(*r, di.x_out).empty();
        t.check(ok, describe(di.graph, di.k));
    }
    t.check(st.used_dummy > 0, "dummy slots never used");
    t.check(st.used_finished > 0, "finished cliques never used");
    detail = "dummy " + std::to_string(st.used_dummy) + ", finished " + std::to_string(st.used_finished) +
             ", forced " + std::to_string(st.forced_rule2);
    return t;
}

Tally criterion9(std::string& detail) {
    Tally t;
    Rng rng(909);
    DenseOptions opt;
    opt.guard_constant = 1;
    int routed = 0, yes = 0;
    for (int rep = 0; rep < 200; ++rep) {
        const int s = rng.range(5, 7);
        const int q = rng.range(2, 14 / s);
        const int adds = rng.range(0, 3);
        const int k = rng.range(0, 3);
        Graph g = generate_planted(q, s, adds, 0, rng.next());
        DenseStats st;
        auto w = solve_uced_dense(g, k, opt, &st);
        const bool truth = oracle_edge(g, k, EdgeMode::remove).yes;
        t.check(w.has_value() == truth && (!w || verify_witness(g, k, *w)), "decision " + describe(g, k));
        if (st.fallback) continue;
        ++routed;
        if (!w) continue;
        ++yes;
        std::vector<VertexSet> expected;
        for (int c = 0; c < q; ++c) {
            VertexSet block;
            for (int v = c * s; v < (c + 1) * s; ++v) block.push_back(v);
            expected.push_back(set_difference(block, st.L));
        }
        auto got = st.cut_parts;
        std::sort(got.begin(), got.end());
        std::sort(expected.begin(), expected.end());
        t.check(got == expected, "cut parts " + describe(g, k));
    }
    t.check(routed >= 50, "only " + std::to_string(routed) + " instances reached the cut path");
    detail = std::to_string(routed) + " routed through the cut, " + std::to_string(yes) + " yes-instances";
    return t;
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    bool all = true;
    auto report = [&](int id, const std::string& name, const Tally& t, const std::string& detail = {}) {
        all = all && t.pass();
        std::cout << "criterion " << id << " [" << name << "]: " << (t.pass() ? "PASS" : "FAIL") << " — "
                  << t.checked - t.failures << "/" << t.checked << " checks";
        if (!detail.empty()) std::cout << "; " << detail;
        if (t.failures) std::cout << "; first failure: " << t.first_failure;
        std::cout << std::endl;
    };
    const Corpora corpora = build_corpora();
    report(1, "solver equivalence", criterion1(corpora));
    std::map<Variant, int> reduced;
    Tally t2 = criterion2(corpora, reduced);
    std::string d2 = "reduced outcomes:";
    for (Variant v : all_variants) {
        d2 += " " + to_string(v) + "=" + std::to_string(reduced[v]);
        t2.check(reduced[v] > 0, "no reduced outcome for " + to_string(v));
    }
    report(2, "kernel size bounds", t2, d2);
    report(3, "kernel decision equivalence", criterion3(corpora));
    std::string d4, d5, d8, d9;
    Tally t4 = criterion4(d4);
    report(4, "diamond spot values", t4, d4);
    Tally t5 = criterion5(corpora, d5);
    report(5, "branching discipline", t5, d5);
    report(6, "score-2 classification closure", criterion6());
    report(7, "split-sequence constructivity", criterion7(corpora));
    Tally t8 = criterion8(d8);
    report(8, "disjoint matching", t8, d8);
    Tally t9 = criterion9(d9);
    report(9, "dense cut path", t9, d9);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "total " << secs << " s" << std::endl;
    return all ? 0 : 1;
}
