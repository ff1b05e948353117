#pragma once

#include <cstdint>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "json.hpp"
#include "regspec/graph.hpp"
#include "regspec/walks.hpp"

namespace regspec {

// nullopt stands for an infinite girth / oddgirth.
using CycleLength = std::optional<std::size_t>;

inline constexpr std::size_t default_census_cap = 11;

inline std::string to_string(const CycleLength& len) { return len ? std::to_string(*len) : std::string("inf"); }

inline nlohmann::json to_json(const CycleLength& len) {
    return len ? nlohmann::json(*len) : nlohmann::json("inf");
}

// Shortest cycle: BFS from every root, closing on non-tree edges.
inline CycleLength girth(const Graph& g) {
    const std::size_t n = g.order();
    std::size_t best = unreachable;
    std::vector<std::size_t> dist(n);
    std::vector<Vertex> parent(n);
    for (Vertex root = 0; root < n; ++root) {
        std::fill(dist.begin(), dist.end(), unreachable);
        dist[root] = 0;
        parent[root] = root;
        std::queue<Vertex> frontier;
        frontier.push(root);
        while (!frontier.empty()) {
            const Vertex u = frontier.front();
            frontier.pop();
            if (2 * dist[u] >= best) break;
            for (Vertex w : g.neighbors(u)) {
                if (dist[w] == unreachable) {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    frontier.push(w);
                } else if (w != parent[u]) {
                    best = std::min(best, dist[u] + dist[w] + 1);
                }
            }
        }
    }
    return best == unreachable ? CycleLength{} : CycleLength{best};
}

// Shortest odd cycle: an edge joining two vertices of equal BFS depth d closes
// an odd closed walk of length 2d+1; the minimum over roots is attained on a
// shortest odd cycle.
inline CycleLength oddgirth(const Graph& g) {
    const std::size_t n = g.order();
    std::size_t best = unreachable;
    std::vector<std::size_t> dist(n);
    for (Vertex root = 0; root < n; ++root) {
        std::fill(dist.begin(), dist.end(), unreachable);
        dist[root] = 0;
        std::queue<Vertex> frontier;
        frontier.push(root);
        while (!frontier.empty()) {
            const Vertex u = frontier.front();
            frontier.pop();
            if (2 * dist[u] + 1 >= best) break;
            for (Vertex w : g.neighbors(u)) {
                if (dist[w] == unreachable) {
                    dist[w] = dist[u] + 1;
                    frontier.push(w);
                } else if (dist[w] == dist[u]) {
                    best = std::min(best, 2 * dist[u] + 1);
                }
            }
        }
    }
    return best == unreachable ? CycleLength{} : CycleLength{best};
}

struct CycleCensus {
    std::size_t r_max = 0;
    std::vector<std::uint64_t> counts;   // counts[r] = number of r-cycles, r = 0..r_max
};

// Each cycle is enumerated once: it starts at its minimum vertex and its
// second vertex is smaller than its last.
inline CycleCensus cycle_census(const Graph& g, std::size_t r_max, std::size_t cap = default_census_cap) {
    if (r_max > cap)
        throw Error(ErrorKind::CensusCapExceeded, "census length " + std::to_string(r_max) + " above cap " + std::to_string(cap));
    CycleCensus c;
    c.r_max = r_max;
    c.counts.assign(r_max + 1, 0);
    if (r_max < 3) return c;

    const std::size_t n = g.order();
    std::vector<char> on_path(n, 0);
    for (Vertex start = 0; start < n; ++start) {
        on_path[start] = 1;
        // `length` counts vertices on the path start..at.
        auto extend = [&](auto&& self, Vertex second, Vertex at, std::size_t length) -> void {
            for (Vertex w : g.neighbors(at)) {
                if (w <= start || on_path[w]) continue;
                if (length + 1 >= 3 && second < w && g.adjacent(w, start)) ++c.counts[length + 1];
                if (length + 1 < r_max) {
                    on_path[w] = 1;
                    self(self, second, w, length + 1);
                    on_path[w] = 0;
                }
            }
        };
        for (Vertex second : g.neighbors(start)) {
            if (second <= start) continue;
            on_path[second] = 1;
            extend(extend, second, second, 2);
            on_path[second] = 0;
        }
        on_path[start] = 0;
    }
    return c;
}

struct BallSurvey {
    std::size_t r = 0;
    std::vector<Vertex> bipartite_vertices;   // centres whose radius-r ball induces a bipartite graph
    std::size_t n_count = 0;
};

inline BallSurvey ball_survey(const Graph& g, std::size_t r) {
    if (r < 1) throw Error(ErrorKind::DomainError, "ball survey needs r >= 1");
    BallSurvey s;
    s.r = r;
    for (Vertex v = 0; v < g.order(); ++v) {
        const auto local = induced_subgraph(g, ball(g, v, r));
        if (is_bipartite(local.graph).bipartite) s.bipartite_vertices.push_back(v);
    }
    s.n_count = s.bipartite_vertices.size();
    return s;
}

struct OddTraceReport {
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t r = 0;
    std::size_t bipartite_count = 0;     // n_{2r+1}
    std::string phi;                     // Phi_{2r+1}
    bool diagonal_zero = false;          // (A^{2r+1})_vv = 0 on every surveyed bipartite-ball vertex
    std::size_t nonzero_on_survivors = 0;
    double theta = 0;                    // Phi_{2r+1} / (n - n_{2r+1}); 0 when n_{2r+1} = n
    std::string theta_bound;             // k^{2r+1}
    bool theta_ok = false;
    bool pass = false;
};

inline OddTraceReport verify_odd_trace_vanishing(const Graph& g, std::size_t r, const WalkCaps& caps = {}) {
    const auto k = regularity(g);
    if (!k) throw Error(ErrorKind::NotRegular, "odd-trace check needs a regular graph");
    const auto survey = ball_survey(g, r);
    const std::size_t length = 2 * r + 1;

    OddTraceReport rep;
    rep.n = g.order();
    rep.k = *k;
    rep.r = r;
    rep.bipartite_count = survey.n_count;

    std::vector<char> survivor(g.order(), 0);
    for (Vertex v : survey.bipartite_vertices) survivor[v] = 1;
    BigInt phi = 0;
    for (Vertex v = 0; v < g.order(); ++v) {
        const BigInt at_v = closed_walks_from(g, v, length, caps);
        phi += at_v;
        if (survivor[v] && at_v != 0) ++rep.nonzero_on_survivors;
    }
    rep.phi = phi.str();
    rep.diagonal_zero = rep.nonzero_on_survivors == 0;

    const BigInt bound = boost::multiprecision::pow(BigInt(*k), static_cast<unsigned>(length));
    rep.theta_bound = bound.str();
    const std::size_t outside = rep.n - rep.bipartite_count;
    if (outside == 0) {
        rep.theta = 0.0;
        rep.theta_ok = phi == 0;
    } else {
        rep.theta = to_double(phi) / static_cast<double>(outside);
        rep.theta_ok = phi >= 0 && phi <= bound * outside;
    }
    rep.pass = rep.diagonal_zero && rep.theta_ok;
    return rep;
}

struct AlphaReport {
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t r = 0;
    std::size_t lhs = 0;                  // n - n_{2r+1}
    std::string rhs_literal;              // sum_{l=1}^{r-1} 3(2l+1)(k-1)^r c_{2l+1}
    std::string rhs_extended;             // same sum to l = r
    bool literal_pass = false;
    bool extended_pass = false;
    std::vector<std::uint64_t> odd_counts;   // c_3, c_5, ..., c_{2r+1}
};

// Both summation ranges are evaluated; a failing range is a finding, not an error.
inline AlphaReport verify_alpha_inequality(const Graph& g, std::size_t r, std::size_t census_cap = default_census_cap) {
    const auto k = regularity(g);
    if (!k) throw Error(ErrorKind::NotRegular, "alpha inequality needs a regular graph");
    if (r < 1) throw Error(ErrorKind::DomainError, "alpha inequality needs r >= 1");

    AlphaReport rep;
    rep.n = g.order();
    rep.k = *k;
    rep.r = r;
    rep.lhs = rep.n - ball_survey(g, r).n_count;

    const auto census = cycle_census(g, 2 * r + 1, census_cap);
    const BigInt scale = boost::multiprecision::pow(BigInt(*k > 0 ? *k - 1 : 0), static_cast<unsigned>(r));
    BigInt literal = 0, extended = 0;
    for (std::size_t l = 1; l <= r; ++l) {
        const std::uint64_t c = census.counts[2 * l + 1];
        rep.odd_counts.push_back(c);
        const BigInt term = BigInt(3) * (2 * l + 1) * scale * c;
        if (l + 1 <= r) literal += term;
        extended += term;
    }
    rep.rhs_literal = literal.str();
    rep.rhs_extended = extended.str();
    rep.literal_pass = BigInt(rep.lhs) <= literal;
    rep.extended_pass = BigInt(rep.lhs) <= extended;
    return rep;
}

inline nlohmann::json to_json(const CycleCensus& c) { return {{"r_max", c.r_max}, {"counts", c.counts}}; }

inline nlohmann::json to_json(const BallSurvey& s) {
    return {{"r", s.r}, {"n_count", s.n_count}, {"bipartite_vertices", s.bipartite_vertices}};
}

inline nlohmann::json to_json(const OddTraceReport& r) {
    return {{"n", r.n},          {"k", r.k},
            {"r", r.r},          {"n_bipartite_balls", r.bipartite_count},
            {"phi_odd", r.phi},  {"diagonal_zero", r.diagonal_zero},
            {"theta", r.theta},  {"theta_bound", r.theta_bound},
            {"theta_ok", r.theta_ok}, {"pass", r.pass}};
}

inline nlohmann::json to_json(const AlphaReport& r) {
    return {{"n", r.n},
            {"k", r.k},
            {"r", r.r},
            {"lhs", r.lhs},
            {"rhs_literal", r.rhs_literal},
            {"rhs_extended", r.rhs_extended},
            {"literal_pass", r.literal_pass},
            {"extended_pass", r.extended_pass},
            {"odd_cycle_counts", r.odd_counts}};
}

} // namespace regspec
