#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "graph.hpp"
#include "random.hpp"

namespace ucg {

enum class Variant { ucvd, uced, ucea, ucee, ucevs, ucivs };

inline constexpr Variant all_variants[] = {Variant::ucvd, Variant::uced, Variant::ucea,
                                           Variant::ucee, Variant::ucevs, Variant::ucivs};

inline std::string to_string(Variant v) {
    switch (v) {
        case Variant::ucvd: return "ucvd";
        case Variant::uced: return "uced";
        case Variant::ucea: return "ucea";
        case Variant::ucee: return "ucee";
        case Variant::ucevs: return "ucevs";
        case Variant::ucivs: return "ucivs";
    }
    return "?";
}

inline std::optional<Variant> parse_variant(std::string_view s) {
    for (Variant v : all_variants)
        if (to_string(v) == s) return v;
    return std::nullopt;
}

inline bool is_split_variant(Variant v) { return v == Variant::ucevs || v == Variant::ucivs; }

struct Instance {
    Graph graph;
    int k = 0;
    Variant variant = Variant::ucvd;
};

enum class SplitMode { inclusive, exclusive };

// `vertex` keeps neighbour set `first`; a fresh vertex (next free id) takes `second`.
struct SplitStep {
    Vertex vertex = 0;
    VertexSet first;
    VertexSet second;
    SplitMode mode = SplitMode::exclusive;
    friend bool operator==(const SplitStep&, const SplitStep&) = default;
};

using SplitSequence = std::vector<SplitStep>;

struct Witness {
    Variant variant = Variant::ucvd;
    VertexSet vertices;     // ucvd
    EdgeSet edges;          // uced / ucea / ucee
    SplitSequence splits;   // ucevs / ucivs

    std::size_t size() const {
        switch (variant) {
            case Variant::ucvd: return vertices.size();
            case Variant::ucevs:
            case Variant::ucivs: return splits.size();
            default: return edges.size();
        }
    }
    friend bool operator==(const Witness&, const Witness&) = default;
};

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

class WitnessError : public std::runtime_error {
public:
    WitnessError(int step, const std::string& msg)
        : std::runtime_error(step >= 0 ? "step " + std::to_string(step) + ": " + msg : msg), step_(step) {}
    int step() const { return step_; }  // -1 when not tied to a split step

private:
    int step_;
};

class GenerationError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> toks;
    for (std::string t; in >> t;) toks.push_back(t);
    return toks;
}

inline long long parse_int(const std::string& tok, int line) {
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError(line, "expected an integer, got '" + tok + "'");
    }
    if (pos != tok.size()) throw ParseError(line, "expected an integer, got '" + tok + "'");
    return v;
}

inline std::string join_ids(const VertexSet& vs) {
    std::string s;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(vs[i] + 1);
    }
    return s;
}

inline VertexSet parse_ids(const std::string& field, int line) {
    VertexSet out;
    std::string cur;
    std::istringstream in(field);
    while (std::getline(in, cur, ',')) {
        auto toks = split_ws(cur);
        if (toks.empty()) continue;
        if (toks.size() != 1) throw ParseError(line, "malformed id list");
        long long id = parse_int(toks[0], line);
        if (id < 1) throw ParseError(line, "vertex id must be positive");
        out.push_back(static_cast<Vertex>(id - 1));
    }
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end()) throw ParseError(line, "repeated id in list");
    return out;
}

}  // namespace detail

// ---- instance files ----

inline Graph parse_instance(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    long long n = -1, m = -1;
    std::vector<std::pair<Edge, int>> edges;  // edge, line
    while (std::getline(in, raw)) {
        ++lineno;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        auto toks = detail::split_ws(raw);
        if (toks.empty() || toks[0] == "c") continue;
        if (n < 0) {
            if (toks.size() != 4 || toks[0] != "p" || toks[1] != "ucluster")
                throw ParseError(lineno, "malformed header, expected 'p ucluster <n> <m>'");
            n = detail::parse_int(toks[2], lineno);
            m = detail::parse_int(toks[3], lineno);
            if (n < 0 || m < 0) throw ParseError(lineno, "malformed header, negative count");
            continue;
        }
        if (toks[0] != "e" || toks.size() != 3) throw ParseError(lineno, "expected 'e <u> <v>'");
        long long u = detail::parse_int(toks[1], lineno), v = detail::parse_int(toks[2], lineno);
        if (u == v) throw ParseError(lineno, "self-loop at vertex " + toks[1]);
        if (u < 1 || v < 1 || u > n || v > n) throw ParseError(lineno, "vertex id out of range");
        if (u > v) throw ParseError(lineno, "edge endpoints must satisfy u < v");
        if (static_cast<long long>(edges.size()) >= m) throw ParseError(lineno, "more edge lines than declared");
        edges.push_back({{static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1)}, lineno});
    }
    if (n < 0) throw ParseError(lineno, "missing header");
    if (static_cast<long long>(edges.size()) != m)
        throw ParseError(lineno, "declared " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
    auto sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i].first == sorted[i - 1].first)
            throw ParseError(sorted[i].second, "duplicate edge " + std::to_string(sorted[i].first.u + 1) + " " +
                                                   std::to_string(sorted[i].first.v + 1));
    std::vector<Edge> es;
    for (auto& [e, line] : edges) es.push_back(e);
    return Graph(static_cast<int>(n), es);
}

inline std::string write_instance(const Graph& g, const std::string& comment = {}) {
    std::ostringstream out;
    if (!comment.empty()) out << "c " << comment << '\n';
    out << "p ucluster " << g.n() << ' ' << g.m() << '\n';
    for (Edge e : g.edges()) out << "e " << e.u + 1 << ' ' << e.v + 1 << '\n';
    return out.str();
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

// ---- witness files ----

inline std::string write_witness(const Witness& w) {
    std::ostringstream out;
    out << "w " << to_string(w.variant) << ' ' << w.size() << '\n';
    switch (w.variant) {
        case Variant::ucvd:
            for (Vertex v : w.vertices) out << "v " << v + 1 << '\n';
            break;
        case Variant::ucevs:
        case Variant::ucivs:
            for (const auto& s : w.splits)
                out << "s " << s.vertex + 1 << " | " << detail::join_ids(s.first) << " | "
                    << detail::join_ids(s.second) << '\n';
            break;
        default:
            for (Edge e : w.edges) out << "e " << e.u + 1 << ' ' << e.v + 1 << '\n';
    }
    return out.str();
}

inline Witness parse_witness(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    std::optional<Witness> w;
    long long declared = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        auto toks = detail::split_ws(raw);
        if (toks.empty() || toks[0] == "c") continue;
        if (!w) {
            if (toks.size() != 3 || toks[0] != "w") throw ParseError(lineno, "malformed header, expected 'w <variant> <size>'");
            auto var = parse_variant(toks[1]);
            if (!var) throw ParseError(lineno, "unknown variant '" + toks[1] + "'");
            w = Witness{};
            w->variant = *var;
            declared = detail::parse_int(toks[2], lineno);
            continue;
        }
        const Variant var = w->variant;
        if (toks[0] == "v" && var == Variant::ucvd && toks.size() == 2) {
            long long id = detail::parse_int(toks[1], lineno);
            if (id < 1) throw ParseError(lineno, "vertex id must be positive");
            w->vertices.push_back(static_cast<Vertex>(id - 1));
        } else if (toks[0] == "e" && toks.size() == 3 && !is_split_variant(var) && var != Variant::ucvd) {
            long long u = detail::parse_int(toks[1], lineno), v = detail::parse_int(toks[2], lineno);
            if (u < 1 || v < 1 || u == v) throw ParseError(lineno, "invalid edge");
            w->edges.push_back(make_edge(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1)));
        } else if (toks[0] == "s" && is_split_variant(var)) {
            std::string body = raw.substr(raw.find('s') + 1);
            auto bar1 = body.find('|');
            auto bar2 = bar1 == std::string::npos ? bar1 : body.find('|', bar1 + 1);
            if (bar2 == std::string::npos || body.find('|', bar2 + 1) != std::string::npos)
                throw ParseError(lineno, "expected 's <v> | <ids> | <ids>'");
            auto head = detail::split_ws(body.substr(0, bar1));
            if (head.size() != 1) throw ParseError(lineno, "expected a single split vertex");
            long long id = detail::parse_int(head[0], lineno);
            if (id < 1) throw ParseError(lineno, "vertex id must be positive");
            SplitStep st;
            st.vertex = static_cast<Vertex>(id - 1);
            st.first = detail::parse_ids(body.substr(bar1 + 1, bar2 - bar1 - 1), lineno);
            st.second = detail::parse_ids(body.substr(bar2 + 1), lineno);
            st.mode = var == Variant::ucevs ? SplitMode::exclusive : SplitMode::inclusive;
            w->splits.push_back(std::move(st));
        } else {
            throw ParseError(lineno, "unexpected line for variant " + to_string(var));
        }
    }
    if (!w) throw ParseError(lineno, "missing witness header");
    if (static_cast<long long>(w->size()) != declared)
        throw ParseError(lineno, "declared size " + std::to_string(declared) + ", found " + std::to_string(w->size()));
    std::sort(w->vertices.begin(), w->vertices.end());
    std::sort(w->edges.begin(), w->edges.end());
    return *w;
}

// ---- applying witnesses ----

inline Graph apply_split(const Graph& g, const SplitStep& s, int step_index = -1) {
    if (s.vertex < 0 || s.vertex >= g.n()) throw WitnessError(step_index, "split vertex out of range");
    const VertexSet& nb = g.neighbors(s.vertex);
    auto check_subset = [&](const VertexSet& part, const char* which) {
        if (!std::is_sorted(part.begin(), part.end()) || std::adjacent_find(part.begin(), part.end()) != part.end())
            throw WitnessError(step_index, std::string(which) + " neighbour set is not a sorted set");
        if (!std::includes(nb.begin(), nb.end(), part.begin(), part.end()))
            throw WitnessError(step_index, std::string(which) + " neighbour set is not a subset of N(v)");
    };
    check_subset(s.first, "first");
    check_subset(s.second, "second");
    if (set_union(s.first, s.second) != nb) throw WitnessError(step_index, "neighbour sets do not cover N(v)");
    if (s.mode == SplitMode::exclusive && !set_intersection(s.first, s.second).empty())
        throw WitnessError(step_index, "exclusive split with overlapping neighbour sets");
    const Vertex fresh = g.n();
    std::vector<Edge> es;
    for (Edge e : g.edges())
        if (e.u != s.vertex && e.v != s.vertex) es.push_back(e);
    for (Vertex w : s.first) es.push_back(make_edge(s.vertex, w));
    for (Vertex w : s.second) es.push_back(make_edge(fresh, w));
    return Graph(g.n() + 1, es);
}

inline Graph apply_witness(const Graph& g, const Witness& w) {
    switch (w.variant) {
        case Variant::ucvd: {
            VertexSet del = w.vertices;
            std::sort(del.begin(), del.end());
            if (std::adjacent_find(del.begin(), del.end()) != del.end()) throw WitnessError(-1, "repeated vertex");
            for (Vertex v : del)
                if (v < 0 || v >= g.n()) throw WitnessError(-1, "vertex out of range");
            return induced_subgraph(g, set_difference(all_vertices(g.n()), del));
        }
        case Variant::uced:
        case Variant::ucea:
        case Variant::ucee: {
            EdgeSet es = w.edges;
            std::sort(es.begin(), es.end());
            if (std::adjacent_find(es.begin(), es.end()) != es.end()) throw WitnessError(-1, "repeated edge");
            for (Edge e : es) {
                if (e.u < 0 || e.v >= g.n() || e.u >= e.v) throw WitnessError(-1, "edge endpoint out of range");
                const bool present = g.has_edge(e.u, e.v);
                if (w.variant == Variant::uced && !present) throw WitnessError(-1, "deleting an absent edge");
                if (w.variant == Variant::ucea && present) throw WitnessError(-1, "adding a present edge");
            }
            return toggle_edges(g, es);
        }
        case Variant::ucevs:
        case Variant::ucivs: {
            Graph cur = g;
            const SplitMode expect = w.variant == Variant::ucevs ? SplitMode::exclusive : SplitMode::inclusive;
            for (std::size_t i = 0; i < w.splits.size(); ++i) {
                if (w.splits[i].mode != expect) throw WitnessError(static_cast<int>(i), "split mode does not match variant");
                cur = apply_split(cur, w.splits[i], static_cast<int>(i));
            }
            return cur;
        }
    }
    return g;
}

// Witness is valid for (g, k): applies cleanly, size ≤ k, result uniform.
inline bool verify_witness(const Graph& g, int k, const Witness& w, std::string* why = nullptr) {
    try {
        if (static_cast<long long>(w.size()) > k) {
            if (why) *why = "witness size " + std::to_string(w.size()) + " exceeds k = " + std::to_string(k);
            return false;
        }
        if (!is_uniform_cluster(apply_witness(g, w))) {
            if (why) *why = "result is not a uniform cluster graph";
            return false;
        }
        return true;
    } catch (const WitnessError& e) {
        if (why) *why = e.what();
        return false;
    }
}

// ---- planted generator ----

// num_cliques disjoint cliques of clique_size, then del_count clique edges removed and
// add_count absent pairs added, both chosen by partial Fisher-Yates over canonically
// ordered candidate lists using Rng(seed).
inline Graph generate_planted(int num_cliques, int clique_size, int add_count, int del_count, std::uint64_t seed) {
    if (num_cliques < 0 || clique_size < 0 || add_count < 0 || del_count < 0)
        throw GenerationError("counts must be non-negative");
    const int n = num_cliques * clique_size;
    Graph base(n);
    std::vector<Edge> present, absent;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (u / clique_size == v / clique_size) present.push_back({u, v});
            else absent.push_back({u, v});
        }
    if (static_cast<std::size_t>(del_count) > present.size()) throw GenerationError("not enough edges to delete");
    if (static_cast<std::size_t>(add_count) > absent.size()) throw GenerationError("not enough absent pairs to add");
    Rng rng(seed);
    rng.partial_shuffle(present, static_cast<std::size_t>(del_count));
    rng.partial_shuffle(absent, static_cast<std::size_t>(add_count));
    std::vector<Edge> es(present.begin() + del_count, present.end());
    es.insert(es.end(), absent.begin(), absent.begin() + add_count);
    std::sort(es.begin(), es.end());
    return Graph(n, es);
}

}  // namespace ucg
