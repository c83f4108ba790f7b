#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <map>
#include <mutex>
#include <regex>
#include <thread>

#include "ucg/ucg.hpp"

using namespace ucg;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

enum Exit { ok = 0, invalid_witness = 1, usage = 2, failure = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Variant variant_arg(const std::string& s) {
    auto v = parse_variant(s);
    if (!v) throw UsageError("unknown variant '" + s + "' (expected ucvd, uced, ucea, ucee, ucevs or ucivs)");
    return *v;
}

Method method_arg(const std::string& s) {
    auto m = parse_method(s);
    if (!m) throw UsageError("unknown method '" + s + "' (expected auto, fpt, kernel+oracle, oracle or dense)");
    return *m;
}

double millis_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

// "c ... k=<int> ..." comment in an instance file
std::optional<int> k_from_comments(const std::string& text) {
    static const std::regex re(R"(^c .*\bk=(\d+))");
    std::istringstream in(text);
    std::string line;
    std::smatch m;
    while (std::getline(in, line))
        if (std::regex_search(line, m, re)) return std::stoi(m[1]);
    return std::nullopt;
}

json kernel_stats(const KernelOutcome& out, Variant var) {
    json j;
    j["schema"] = 1;
    j["variant"] = to_string(var);
    j["n_before"] = out.n_before;
    j["k_before"] = out.k_before;
    if (out.decided()) {
        j["decided"] = out.yes() ? "yes" : "no";
    } else {
        j["decided"] = nullptr;
        j["small_instance"] = out.small_instance;
        j["n_after"] = out.reduced.graph.n();
        j["m_after"] = out.reduced.graph.m();
        j["k_after"] = out.reduced.k;
        if (!out.small_instance) j["bound"] = kernel_bound(var, out.reduced.k);
    }
    std::map<std::string, int> rules;
    json trace = json::array();
    for (const auto& t : out.trace) {
        ++rules[t.rule];
        trace.push_back(format_trace_line(t));
    }
    j["rules"] = rules;
    j["trace"] = trace;
    return j;
}

struct Common {
    std::string file;
    std::string variant = "ucvd";
    int k = -1;
};

Graph load(const Common& c, int* k) {
    const std::string text = read_file(c.file);
    Graph g = parse_instance(text);
    if (c.k >= 0) {
        *k = c.k;
    } else if (auto fk = k_from_comments(text)) {
        *k = *fk;
    } else {
        throw UsageError("no --k given and the instance has no 'k=' comment");
    }
    return g;
}

void print_trace(const KernelOutcome& out) {
    for (const auto& t : out.trace) std::cerr << format_trace_line(t) << '\n';
}

struct SolveArgs {
    Common c;
    std::string method = "auto";
    std::string out;
    std::string stats;
    std::string cut_oracle = "bruteforce";
    bool minimize = false;
    bool trace = false;
    bool override_guard = false;
    bool lower_guard = false;
    int threads = 1;
};

int cmd_solve(const SolveArgs& a) {
    int k = 0;
    Graph g = load(a.c, &k);
    const Variant var = variant_arg(a.c.variant);
    SolveConfig cfg;
    cfg.method = method_arg(a.method);
    cfg.threads = a.threads;
    cfg.oracle.override_guard = a.override_guard;
    if (a.cut_oracle != "bruteforce") throw UsageError("unknown cut oracle '" + a.cut_oracle + "'");
    if (a.lower_guard) cfg.dense.guard_constant = 1;
    const auto t0 = std::chrono::steady_clock::now();
    SolveReport rep;
    int used_k = k;
    if (a.minimize) {
        for (used_k = 0; used_k <= k; ++used_k) {
            rep = solve_instance(g, used_k, var, cfg);
            if (rep.yes) break;
        }
        used_k = std::min(used_k, k);
    } else {
        rep = solve_instance(g, k, var, cfg);
    }
    const double ms = millis_since(t0);
    if (a.trace && rep.kernel) print_trace(*rep.kernel);
    if (rep.yes && !a.out.empty()) write_file(a.out, write_witness(*rep.witness));
    if (!a.stats.empty()) {
        json j;
        j["schema"] = 1;
        j["command"] = "solve";
        j["variant"] = to_string(var);
        j["method"] = a.method;
        j["engine"] = rep.engine;
        j["n"] = g.n();
        j["m"] = g.m();
        j["k"] = used_k;
        j["answer"] = rep.yes ? "YES" : "NO";
        if (rep.yes) {
            j["witness_size"] = rep.witness->size();
            if (a.minimize) j["minimum"] = rep.witness->size();
            if (!a.out.empty()) j["witness"] = a.out;
        }
        if (rep.kernel) j["kernel"] = kernel_stats(*rep.kernel, var);
        j["time_ms"] = ms;
        write_file(a.stats, j.dump(2) + "\n");
    }
    std::cout << (rep.yes ? "YES" : "NO") << '\n';
    return ok;
}

struct KernelArgs {
    Common c;
    std::string out;
    bool trace = false;
};

int cmd_kernel(const KernelArgs& a) {
    int k = 0;
    Graph g = load(a.c, &k);
    const Variant var = variant_arg(a.c.variant);
    const auto t0 = std::chrono::steady_clock::now();
    KernelOutcome out = kernelize(g, k, var);
    json j = kernel_stats(out, var);
    j["time_ms"] = millis_since(t0);
    if (a.trace) print_trace(out);
    if (!out.decided() && !a.out.empty())
        write_file(a.out, write_instance(out.reduced.graph, "kernel of " + fs::path(a.c.file).filename().string() +
                                                                 " k=" + std::to_string(out.reduced.k)));
    std::cout << j.dump(2) << '\n';
    return ok;
}

struct OracleArgs {
    Common c;
    std::string out;
    bool override_guard = false;
};

int cmd_oracle(const OracleArgs& a) {
    int k = 0;
    Graph g = load(a.c, &k);
    OracleOptions opt;
    opt.override_guard = a.override_guard;
    auto ans = oracle(g, k, variant_arg(a.c.variant), opt);
    if (ans.yes) {
        if (!verify_witness(g, k, *ans.witness)) throw std::logic_error("oracle produced an invalid witness");
        if (!a.out.empty()) write_file(a.out, write_witness(*ans.witness));
        std::cerr << "minimum " << *ans.optimum << '\n';
    }
    std::cout << (ans.yes ? "YES" : "NO") << '\n';
    return ok;
}

struct GenArgs {
    int cliques = 3, size = 4, add = 0, del = 0;
    std::uint64_t seed = 1;
    std::string out;
};

int cmd_gen(const GenArgs& a) {
    Graph g = generate_planted(a.cliques, a.size, a.add, a.del, a.seed);
    const std::string text =
        write_instance(g, "planted cliques=" + std::to_string(a.cliques) + " size=" + std::to_string(a.size) +
                              " add=" + std::to_string(a.add) + " del=" + std::to_string(a.del) +
                              " seed=" + std::to_string(a.seed) + " k=" + std::to_string(a.add + a.del));
    if (a.out.empty())
        std::cout << text;
    else
        write_file(a.out, text);
    return ok;
}

struct VerifyArgs {
    std::string instance, witness;
    int k = -1;
};

int cmd_verify(const VerifyArgs& a) {
    const std::string text = read_file(a.instance);
    Graph g = parse_instance(text);
    int k = a.k;
    if (k < 0) {
        auto fk = k_from_comments(text);
        if (!fk) throw UsageError("no --k given and the instance has no 'k=' comment");
        k = *fk;
    }
    Witness w = parse_witness(read_file(a.witness));
    std::string why;
    if (!verify_witness(g, k, w, &why)) {
        std::cout << "INVALID\n";
        std::cerr << why << '\n';
        return invalid_witness;
    }
    std::cout << "VALID\n";
    return ok;
}

struct BenchArgs {
    std::string dir;
    std::string variant = "ucvd";
    int k = -1;
    int threads = 1;
    std::string out;
    bool solve = true;
};

int cmd_bench(const BenchArgs& a) {
    const Variant var = variant_arg(a.variant);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(a.dir))
        if (entry.is_regular_file() && entry.path().extension() == ".gr") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    std::vector<std::string> rows(files.size());
    std::atomic<std::size_t> next{0};
    std::mutex err_mu;
    auto worker = [&] {
        for (std::size_t i; (i = next++) < files.size();) {
            std::ostringstream row;
            try {
                Common c{files[i].string(), a.variant, a.k};
                int k = 0;
                Graph g = load(c, &k);
                const auto t0 = std::chrono::steady_clock::now();
                KernelOutcome out = kernelize(g, k, var);
                std::string answer;
                if (a.solve) {
                    try {
                        answer = solve_instance(g, k, var).yes ? "YES" : "NO";
                    } catch (const CapacityError&) {
                        answer = "CAPACITY";
                    }
                }
                const double ms = millis_since(t0);
                const bool reduced = !out.decided() && !out.small_instance;
                row << files[i].filename().string() << ',' << to_string(var) << ',' << g.n() << ',' << g.m() << ','
                    << k << ',' << (out.decided() ? 0 : out.reduced.graph.n()) << ','
                    << (out.decided() ? 0 : out.reduced.k) << ','
                    << (reduced ? std::to_string(kernel_bound(var, out.reduced.k)) : "") << ','
                    << (out.decided() ? (out.yes() ? "yes" : "no") : (out.small_instance ? "small" : "reduced")) << ','
                    << answer << ',' << ms;
            } catch (const std::exception& e) {
                std::lock_guard lock(err_mu);
                std::cerr << files[i].string() << ": " << e.what() << '\n';
                row << files[i].filename().string() << ',' << to_string(var) << ",,,,,,,error,,";
            }
            rows[i] = row.str();
        }
    };
    std::vector<std::jthread> pool;
    for (int t = 0; t < std::max(1, a.threads); ++t) pool.emplace_back(worker);
    pool.clear();
    std::ostringstream csv;
    csv << "file,variant,n,m,k,kernel_n,kernel_k,bound,kernel,answer,time_ms\n";
    for (const auto& r : rows) csv << r << '\n';
    if (a.out.empty())
        std::cout << csv.str();
    else
        write_file(a.out, csv.str());
    return ok;
}

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("file", c.file, "instance file")->required()->check(CLI::ExistingFile);
    sub->add_option("--variant", c.variant, "ucvd, uced, ucea, ucee, ucevs or ucivs")->required();
    sub->add_option("--k", c.k, "budget (defaults to a 'k=' comment in the file)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Uniform cluster graph modification: kernels, exact solvers and oracles"};
    app.require_subcommand(1);

    SolveArgs solve;
    auto* s = app.add_subcommand("solve", "decide an instance and print YES or NO");
    add_common(s, solve.c);
    s->add_option("--method", solve.method, "auto, fpt, kernel+oracle, oracle or dense");
    s->add_option("--out", solve.out, "write the witness here");
    s->add_option("--stats", solve.stats, "write JSON run statistics here");
    s->add_option("--cut-oracle", solve.cut_oracle, "d-way cut engine for the dense method (bruteforce)");
    s->add_option("--threads", solve.threads, "worker threads for the ucvd solver");
    s->add_flag("--minimize", solve.minimize, "try k = 0, 1, ... up to --k and stop at the first YES");
    s->add_flag("--trace", solve.trace, "print kernel rule firings to stderr");
    s->add_flag("--override-guard", solve.override_guard, "let brute-force engines run past their size guard");
#ifdef UCG_TEST_HOOKS
    s->add_flag("--test-lower-guard", solve.lower_guard, "test builds: lower the dense density guard");
#endif

    KernelArgs kern;
    auto* kc = app.add_subcommand("kernel", "kernelize and print JSON statistics");
    add_common(kc, kern.c);
    kc->add_option("--out", kern.out, "write the reduced instance here");
    kc->add_flag("--trace", kern.trace, "print rule firings to stderr");

    OracleArgs orc;
    auto* oc = app.add_subcommand("oracle", "brute-force decision");
    add_common(oc, orc.c);
    oc->add_option("--out", orc.out, "write the minimum witness here");
    oc->add_flag("--override-guard", orc.override_guard, "run past the size guard");

    GenArgs gen;
    auto* gc = app.add_subcommand("gen", "planted instance: disjoint cliques plus perturbations");
    gc->add_option("--cliques", gen.cliques)->check(CLI::NonNegativeNumber);
    gc->add_option("--size", gen.size)->check(CLI::NonNegativeNumber);
    gc->add_option("--add", gen.add)->check(CLI::NonNegativeNumber);
    gc->add_option("--del", gen.del)->check(CLI::NonNegativeNumber);
    gc->add_option("--seed", gen.seed);
    gc->add_option("--out", gen.out);

    VerifyArgs ver;
    auto* vc = app.add_subcommand("verify", "check a witness file against an instance");
    vc->add_option("instance", ver.instance)->required()->check(CLI::ExistingFile);
    vc->add_option("witness", ver.witness)->required()->check(CLI::ExistingFile);
    vc->add_option("--k", ver.k);

    BenchArgs bench;
    auto* bc = app.add_subcommand("bench", "kernelize and solve every .gr file in a directory, CSV output");
    bc->add_option("dir", bench.dir)->required()->check(CLI::ExistingDirectory);
    bc->add_option("--variant", bench.variant)->required();
    bc->add_option("--k", bench.k);
    bc->add_option("--threads", bench.threads);
    bc->add_option("--out", bench.out);
    bc->add_flag("!--no-solve", bench.solve, "only kernelize");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    try {
        if (*s) return cmd_solve(solve);
        if (*kc) return cmd_kernel(kern);
        if (*oc) return cmd_oracle(orc);
        if (*gc) return cmd_gen(gen);
        if (*vc) return cmd_verify(ver);
        if (*bc) return cmd_bench(bench);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return usage;
    } catch (const WitnessError& e) {
        std::cerr << "invalid witness: " << e.what() << '\n';
        return invalid_witness;
    } catch (const CapacityError& e) {
        std::cerr << "error: " << e.what()
                  << "\nhint: ucvd and uced have fpt solvers (--method fpt); --override-guard lifts the limit\n";
        return failure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return failure;
    }
    return usage;
}
