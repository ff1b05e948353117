#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "regspec/graph.hpp"
#include "regspec/graph_io.hpp"

namespace regspec {

// SplitMix64 (Steele, Lea, Flood 2014). Output depends only on the seed, on
// every platform; `split` derives an independent stream.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    SplitMix64 split() { return SplitMix64(next()); }

    // Uniform in [0, bound), bound > 0, by rejection of the biased tail.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do x = next();
        while (x >= limit);
        return x % bound;
    }

private:
    std::uint64_t state_;
};

inline constexpr std::size_t default_pairing_retry_cap = 1000;

enum class Family { cycle, complete, complete_bipartite, hypercube, petersen, random_regular, line_of, double_of };

struct FamilySpec {
    Family family = Family::cycle;
    std::vector<std::uint64_t> params;   // cycle/complete: {n}; complete_bipartite: {a, b}; hypercube: {d}; random_regular: {n, k}
    std::uint64_t seed = 0;
    std::string source;                  // input file for line_of / double_of
};

// --- deterministic families ------------------------------------------------

inline Graph cycle_graph(std::size_t n) {
    if (n < 3) throw Error(ErrorKind::InvalidParams, "cycle needs n >= 3, got " + std::to_string(n));
    std::vector<Edge> edges;
    for (Vertex v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
    return from_edge_list(n, edges);
}

inline Graph complete_graph(std::size_t n) {
    if (n < 2) throw Error(ErrorKind::InvalidParams, "complete needs n >= 2, got " + std::to_string(n));
    std::vector<std::vector<Vertex>> adj(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v)
            if (u != v) adj[u].push_back(v);
    return Graph::from_adjacency(std::move(adj));
}

inline Graph complete_bipartite_graph(std::size_t a, std::size_t b) {
    if (a < 1 || a != b)
        throw Error(ErrorKind::InvalidParams, "complete_bipartite is regular only for a = b >= 1, got a=" +
                                                  std::to_string(a) + " b=" + std::to_string(b));
    std::vector<Edge> edges;
    for (Vertex u = 0; u < a; ++u)
        for (Vertex v = 0; v < b; ++v) edges.emplace_back(u, a + v);
    return from_edge_list(a + b, edges);
}

inline Graph hypercube_graph(std::size_t d) {
    if (d < 1 || d > 20) throw Error(ErrorKind::InvalidParams, "hypercube needs 1 <= d <= 20, got " + std::to_string(d));
    const std::size_t n = std::size_t{1} << d;
    std::vector<std::vector<Vertex>> adj(n);
    for (Vertex v = 0; v < n; ++v)
        for (std::size_t bit = 0; bit < d; ++bit) adj[v].push_back(v ^ (std::size_t{1} << bit));
    return Graph::from_adjacency(std::move(adj));
}

// Outer 5-cycle 0..4, spokes i -- i+5, inner pentagram on 5..9.
inline Graph petersen_graph() {
    std::vector<Edge> edges;
    for (Vertex i = 0; i < 5; ++i) {
        edges.emplace_back(i, (i + 1) % 5);
        edges.emplace_back(i, i + 5);
        edges.emplace_back(5 + i, 5 + (i + 2) % 5);
    }
    return from_edge_list(10, edges);
}

// Configuration model: k half-edges per vertex, uniform perfect matching,
// whole-sample rejection on any loop or repeated edge.
inline Graph random_regular(std::size_t n, std::size_t k, std::uint64_t seed,
                            std::size_t retry_cap = default_pairing_retry_cap) {
    if ((n * k) % 2 != 0)
        throw Error(ErrorKind::InvalidParams, "n*k must be even, got n=" + std::to_string(n) + " k=" + std::to_string(k));
    if (n < k + 1)
        throw Error(ErrorKind::InvalidParams, "need n >= k+1, got n=" + std::to_string(n) + " k=" + std::to_string(k));

    SplitMix64 rng(seed);
    const std::size_t points = n * k;
    std::vector<Vertex> owner(points);
    std::vector<std::vector<Vertex>> adj(n);
    for (std::size_t attempt = 0; attempt < retry_cap; ++attempt) {
        for (std::size_t p = 0; p < points; ++p) owner[p] = p / k;
        for (auto& list : adj) list.clear();
        bool simple = true;
        // Pair position i with a uniform partner among the unpaired tail.
        for (std::size_t i = 0; i + 1 < points; i += 2) {
            const std::size_t j = i + 1 + static_cast<std::size_t>(rng.below(points - i - 1));
            std::swap(owner[i + 1], owner[j]);
            const Vertex u = owner[i], v = owner[i + 1];
            if (u == v || std::find(adj[u].begin(), adj[u].end(), v) != adj[u].end()) {
                simple = false;
                break;
            }
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
        if (simple) return Graph::from_adjacency(std::move(adj));
    }
    throw Error(ErrorKind::GenerationFailed, "no simple pairing for n=" + std::to_string(n) + " k=" + std::to_string(k) +
                                                 " seed=" + std::to_string(seed) + " within " +
                                                 std::to_string(retry_cap) + " attempts");
}

// --- transforms -------------------------------------------------------------

// Vertex i of the result is the i-th edge of g in lexicographic (min, max) order.
inline Graph line_graph(const Graph& g) {
    const auto edges = g.edges();
    std::vector<std::vector<std::size_t>> incident(g.order());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        incident[edges[i].first].push_back(i);
        incident[edges[i].second].push_back(i);
    }
    std::vector<std::vector<Vertex>> adj(edges.size());
    for (const auto& list : incident)
        for (std::size_t a = 0; a < list.size(); ++a)
            for (std::size_t b = a + 1; b < list.size(); ++b) {
                adj[list[a]].push_back(list[b]);
                adj[list[b]].push_back(list[a]);
            }
    return Graph::from_adjacency(std::move(adj));
}

// (v, 0) -> v and (v, 1) -> n + v; each edge uv gives (u,0)-(v,1) and (v,0)-(u,1).
inline Graph bipartite_double(const Graph& g) {
    const std::size_t n = g.order();
    std::vector<std::vector<Vertex>> adj(2 * n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v : g.neighbors(u)) {
            adj[u].push_back(n + v);
            adj[n + v].push_back(u);
        }
    return Graph::from_adjacency(std::move(adj));
}

// --- spec strings -----------------------------------------------------------

inline std::string_view family_name(Family f) {
    switch (f) {
    case Family::cycle: return "cycle";
    case Family::complete: return "complete";
    case Family::complete_bipartite: return "complete_bipartite";
    case Family::hypercube: return "hypercube";
    case Family::petersen: return "petersen";
    case Family::random_regular: return "random_regular";
    case Family::line_of: return "line_of";
    case Family::double_of: return "double_of";
    }
    return "?";
}

// Canonical text form, e.g. "random_regular:n=100,k=3,seed=7". Also used as graph id.
inline std::string to_string(const FamilySpec& spec) {
    std::string out(family_name(spec.family));
    const auto& p = spec.params;
    switch (spec.family) {
    case Family::cycle:
    case Family::complete: out += ":n=" + std::to_string(p.at(0)); break;
    case Family::complete_bipartite: out += ":a=" + std::to_string(p.at(0)) + ",b=" + std::to_string(p.at(1)); break;
    case Family::hypercube: out += ":d=" + std::to_string(p.at(0)); break;
    case Family::petersen: break;
    case Family::random_regular:
        out += ":n=" + std::to_string(p.at(0)) + ",k=" + std::to_string(p.at(1)) + ",seed=" + std::to_string(spec.seed);
        break;
    case Family::line_of:
    case Family::double_of: out += ":" + spec.source; break;
    }
    return out;
}

// Parses "family[:key=value,...]". `default_seed` fills a missing random_regular seed.
inline FamilySpec parse_family_spec(std::string_view text, std::uint64_t default_seed = 0) {
    const auto colon = text.find(':');
    const std::string_view name = text.substr(0, colon);
    const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);

    static const std::map<std::string_view, Family> families = {
        {"cycle", Family::cycle},         {"complete", Family::complete},
        {"complete_bipartite", Family::complete_bipartite},
        {"hypercube", Family::hypercube}, {"petersen", Family::petersen},
        {"random_regular", Family::random_regular}, {"line_of", Family::line_of},
        {"double_of", Family::double_of}};
    const auto it = families.find(name);
    if (it == families.end()) throw Error(ErrorKind::InvalidParams, "unknown family '" + std::string(name) + "'");

    FamilySpec spec;
    spec.family = it->second;
    if (spec.family == Family::line_of || spec.family == Family::double_of) {
        if (rest.empty()) throw Error(ErrorKind::InvalidParams, std::string(name) + " needs a file path");
        spec.source = std::string(rest);
        return spec;
    }

    std::map<std::string, std::uint64_t, std::less<>> kv;
    std::size_t pos = 0;
    while (pos < rest.size()) {
        auto comma = rest.find(',', pos);
        if (comma == std::string_view::npos) comma = rest.size();
        const std::string_view item = rest.substr(pos, comma - pos);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) throw Error(ErrorKind::InvalidParams, "expected key=value, got '" + std::string(item) + "'");
        std::uint64_t value = 0;
        const auto digits = item.substr(eq + 1);
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
        if (ec != std::errc() || ptr != digits.data() + digits.size())
            throw Error(ErrorKind::InvalidParams, "bad integer in '" + std::string(item) + "'");
        kv[std::string(item.substr(0, eq))] = value;
        pos = comma + 1;
    }

    auto take = [&](std::string_view key) {
        const auto found = kv.find(key);
        if (found == kv.end())
            throw Error(ErrorKind::InvalidParams, std::string(name) + " requires parameter '" + std::string(key) + "'");
        const auto value = found->second;
        kv.erase(found);
        return value;
    };
    switch (spec.family) {
    case Family::cycle:
    case Family::complete: spec.params = {take("n")}; break;
    case Family::complete_bipartite: spec.params = {take("a"), take("b")}; break;
    case Family::hypercube: spec.params = {take("d")}; break;
    case Family::petersen: break;
    case Family::random_regular:
        spec.params = {take("n"), take("k")};
        spec.seed = kv.contains("seed") ? take("seed") : default_seed;
        break;
    default: break;
    }
    if (!kv.empty())
        throw Error(ErrorKind::InvalidParams, "unexpected parameter '" + kv.begin()->first + "' for " + std::string(name));
    return spec;
}

inline Graph generate(const FamilySpec& spec) {
    const auto& p = spec.params;
    auto arity = [&](std::size_t expected) {
        if (p.size() != expected)
            throw Error(ErrorKind::InvalidParams, std::string(family_name(spec.family)) + " takes " +
                                                      std::to_string(expected) + " parameter(s)");
    };
    switch (spec.family) {
    case Family::cycle: arity(1); return cycle_graph(p[0]);
    case Family::complete: arity(1); return complete_graph(p[0]);
    case Family::complete_bipartite: arity(2); return complete_bipartite_graph(p[0], p[1]);
    case Family::hypercube: arity(1); return hypercube_graph(p[0]);
    case Family::petersen: arity(0); return petersen_graph();
    case Family::random_regular: arity(2); return random_regular(p[0], p[1], spec.seed);
    case Family::line_of: return line_graph(read_graph(spec.source));
    case Family::double_of: return bipartite_double(read_graph(spec.source));
    }
    throw Error(ErrorKind::InvalidParams, "unhandled family");
}

inline Graph generate(std::string_view spec_text, std::uint64_t default_seed = 0) {
    return generate(parse_family_spec(spec_text, default_seed));
}

} // namespace regspec
