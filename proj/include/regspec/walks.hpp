#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"
#include "regspec/graph.hpp"
#include "regspec/spectra.hpp"

namespace regspec {

using BigInt = boost::multiprecision::cpp_int;

// Exact walk counting refuses matrices of order > max_order or powers beyond
// max_length unless override_caps is set.
struct WalkCaps {
    std::size_t max_order = 512;
    std::size_t max_length = 64;
    bool override_caps = false;
};

inline constexpr std::size_t oracle_max_order = 16;
inline constexpr std::size_t oracle_max_length = 10;

struct WalkTable {
    std::size_t r_max = 0;
    std::vector<BigInt> phi;                 // phi[r] = Tr(A^r)
    std::vector<std::vector<BigInt>> diag;   // diag[v][r] = (A^r)_vv
};

namespace detail {

inline void check_walk_caps(std::size_t order, std::size_t length, const WalkCaps& caps, const char* what) {
    if (caps.override_caps) return;
    if (order > caps.max_order || length > caps.max_length)
        throw Error(ErrorKind::ResourceLimit, std::string(what) + ": order " + std::to_string(order) + ", length " +
                                                  std::to_string(length) + " exceeds caps (" +
                                                  std::to_string(caps.max_order) + ", " +
                                                  std::to_string(caps.max_length) + ")");
}

// (A^r)_vv for r = 0..r_max. A closed walk of length r never leaves distance
// r/2 from v, so the propagation runs on that ball only.
inline std::vector<BigInt> diagonal_profile(const Graph& g, Vertex v, std::size_t r_max, const WalkCaps& caps) {
    const auto local = induced_subgraph(g, ball(g, v, r_max / 2));
    check_walk_caps(local.graph.order(), r_max, caps, "closed walk count");
    const Vertex centre = static_cast<Vertex>(
        std::lower_bound(local.original.begin(), local.original.end(), v) - local.original.begin());

    const std::size_t b = local.graph.order();
    std::vector<BigInt> current(b), next(b);
    current[centre] = 1;
    std::vector<BigInt> profile(r_max + 1);
    profile[0] = 1;
    for (std::size_t step = 1; step <= r_max; ++step) {
        for (Vertex i = 0; i < b; ++i) {
            next[i] = 0;
            for (Vertex j : local.graph.neighbors(i)) next[i] += current[j];
        }
        std::swap(current, next);
        profile[step] = current[centre];
    }
    return profile;
}

} // namespace detail

inline WalkTable walk_table(const Graph& g, std::size_t r_max, const WalkCaps& caps = {}) {
    detail::check_walk_caps(g.order(), r_max, caps, "walk table");
    WalkTable t;
    t.r_max = r_max;
    t.phi.assign(r_max + 1, 0);
    t.diag.reserve(g.order());
    for (Vertex v = 0; v < g.order(); ++v) {
        t.diag.push_back(detail::diagonal_profile(g, v, r_max, caps));
        for (std::size_t r = 0; r <= r_max; ++r) t.phi[r] += t.diag.back()[r];
    }
    return t;
}

inline BigInt closed_walks_from(const Graph& g, Vertex v, std::size_t r, const WalkCaps& caps = {}) {
    if (v >= g.order()) throw Error(ErrorKind::OutOfRange, "vertex " + std::to_string(v));
    return detail::diagonal_profile(g, v, r, caps)[r];
}

// Phi_r = Tr(A^r) summed over per-vertex exact counts.
inline BigInt closed_walk_total(const Graph& g, std::size_t r, const WalkCaps& caps = {}) {
    BigInt total = 0;
    for (Vertex v = 0; v < g.order(); ++v) total += closed_walks_from(g, v, r, caps);
    return total;
}

// Brute-force count of closed walks v = x0, x1, ..., x_r = v by depth-first
// enumeration of neighbor sequences. Independent of the propagation above.
inline std::uint64_t enumerate_walks_oracle(const Graph& g, Vertex v, std::size_t r) {
    if (g.order() > oracle_max_order || r > oracle_max_length)
        throw Error(ErrorKind::OracleCapExceeded, "oracle limited to n <= 16 and r <= 10");
    if (v >= g.order()) throw Error(ErrorKind::OutOfRange, "vertex " + std::to_string(v));
    if (r == 0) return 1;

    std::uint64_t count = 0;
    // Walk prefix x0..x_depth; the last step is forced back to v.
    auto extend = [&](auto&& self, Vertex at, std::size_t depth) -> void {
        if (depth == r - 1) {
            if (g.adjacent(at, v)) ++count;
            return;
        }
        for (Vertex w : g.neighbors(at)) self(self, w, depth + 1);
    };
    extend(extend, v, 0);
    return count;
}

inline BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    BigInt result = 1;
    for (unsigned i = 1; i <= k; ++i) {
        result *= n - k + i;
        result /= i;
    }
    return result;
}

inline BigInt catalan(unsigned s) { return binomial(2 * s, s) / (s + 1); }

// C_s * k * (k-1)^(s-1): the Catalan-profile lower bound on closed 2s-walks at a vertex.
inline BigInt tree_walk_lower_bound(unsigned s, unsigned k) {
    if (s < 1 || k < 1) throw Error(ErrorKind::DomainError, "tree_walk_lower_bound needs s >= 1 and k >= 1");
    return catalan(s) * k * boost::multiprecision::pow(BigInt(k - 1), s - 1);
}

// Closed 2s-walks from the root of the infinite k-regular tree, by dynamic
// programming over the distance from the root.
inline BigInt tree_walks_exact(unsigned s, unsigned k) {
    if (k < 1) throw Error(ErrorKind::DomainError, "tree_walks_exact needs k >= 1");
    const unsigned steps = 2 * s;
    std::vector<BigInt> ways(s + 2), next(s + 2);
    ways[0] = 1;
    for (unsigned i = 0; i < steps; ++i) {
        std::fill(next.begin(), next.end(), BigInt(0));
        // Past distance steps-i-1 the walk could not get back in time.
        const unsigned reach = std::min<unsigned>(s, std::min(i, steps - i));
        for (unsigned d = 0; d <= reach; ++d) {
            if (ways[d] == 0) continue;
            if (d + 1 <= s) next[d + 1] += ways[d] * (d == 0 ? k : k - 1);
            if (d > 0) next[d - 1] += ways[d];
        }
        std::swap(ways, next);
    }
    return ways[0];
}

struct TraceBoundReport {
    std::size_t n = 0;
    std::size_t k = 0;
    unsigned s = 0;
    bool exact = true;                 // false: Phi_2s taken from spectral power sums
    std::string phi;                   // Phi_2s, decimal (exact route) or scientific
    std::string tree_bound;           // n * C_s * k (k-1)^(s-1)
    bool tree_ok = false;             // Phi_2s >= tree_bound
    double tree_ratio = 0;            // Phi_2s / tree_bound
    bool aggregate_ok = false;               // Phi_2s > n (2 sqrt(k-1))^(2s) / (s+1)^2
    double aggregate_ratio = 0;
    bool binomial_ok = false;          // C(2s,s) (s+1) >= 4^s
    std::string binomial_slack;        // C(2s,s) (s+1) - 4^s
    std::optional<bool> per_vertex_ok; // every (A^2s)_vv >= tree_walks_exact(s,k) >= C_s k (k-1)^(s-1)
    std::string min_vertex_slack;      // min_v (A^2s)_vv - tree_walks_exact(s,k)
    // Positive iff the corresponding inequality holds.
    double tree_margin = 0;           // (Phi - bound + 1) / max(1, bound)
    double aggregate_margin = 0;             // (Phi (s+1)^2 - n 4^s (k-1)^s) / (n 4^s (k-1)^s)
    double binomial_margin = 0;        // C(2s,s)(s+1) - 4^s + 1
    double per_vertex_margin = 1;      // min slack + 1
    bool pass = false;
};

inline double to_double(const BigInt& x) { return x.convert_to<double>(); }

// Exact route whenever every radius-s ball fits the caps; otherwise, if a
// spectrum is supplied, Phi_2s = sum lambda^2s in long double.
inline TraceBoundReport check_trace_bound(const Graph& g, unsigned s, const WalkCaps& caps = {},
                                          const Spectrum* spec = nullptr) {
    const auto k = regularity(g);
    if (!k) throw Error(ErrorKind::NotRegular, "trace bound needs a regular graph");
    if (s < 1) throw Error(ErrorKind::DomainError, "trace bound needs s >= 1");

    TraceBoundReport r;
    r.n = g.order();
    r.k = *k;
    r.s = s;
    const unsigned kk = static_cast<unsigned>(*k);

    const BigInt tree_exact = tree_walks_exact(s, kk);
    const BigInt lower = kk >= 1 ? tree_walk_lower_bound(s, kk) : BigInt(0);
    const BigInt tree = BigInt(r.n) * lower;
    r.tree_bound = tree.str();
    const BigInt agg_num = BigInt(r.n) * boost::multiprecision::pow(BigInt(4), s) *
                                 boost::multiprecision::pow(BigInt(kk > 0 ? kk - 1 : 0), s);
    const BigInt agg_den = BigInt(s + 1) * (s + 1);

    const BigInt central = binomial(2 * s, s) * (s + 1);
    const BigInt four_s = boost::multiprecision::pow(BigInt(4), s);
    r.binomial_ok = central >= four_s;
    r.binomial_slack = BigInt(central - four_s).str();
    r.binomial_margin = to_double(central - four_s + 1);

    try {
        BigInt phi = 0;
        std::optional<BigInt> min_slack;
        for (Vertex v = 0; v < g.order(); ++v) {
            const BigInt at_v = closed_walks_from(g, v, 2 * s, caps);
            phi += at_v;
            const BigInt slack = at_v - tree_exact;
            if (!min_slack || slack < *min_slack) min_slack = slack;
        }
        r.exact = true;
        r.phi = phi.str();
        r.tree_ok = phi >= tree;
        r.tree_ratio = tree == 0 ? INFINITY : to_double(phi) / to_double(tree);
        r.aggregate_ok = phi * agg_den > agg_num;
        r.aggregate_ratio = agg_num == 0 ? INFINITY : to_double(phi * agg_den) / to_double(agg_num);
        if (min_slack) {
            r.per_vertex_ok = *min_slack >= 0 && tree_exact >= lower;
            r.min_vertex_slack = min_slack->str();
            r.per_vertex_margin = tree_exact >= lower ? to_double(*min_slack + 1) : -1.0;
        }
        r.tree_margin = to_double(phi - tree + 1) / std::max(1.0, to_double(tree));
        r.aggregate_margin = agg_num == 0 ? (phi > 0 ? 1.0 : -1.0)
                                    : to_double(phi * agg_den - agg_num) / to_double(agg_num);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::ResourceLimit || spec == nullptr) throw;
        const long double phi = power_sum(*spec, 2 * s);
        r.exact = false;
        r.phi = std::to_string(static_cast<double>(phi));
        const long double tree_f = tree.convert_to<long double>();
        const long double agg_f = agg_num.convert_to<long double>() / agg_den.convert_to<long double>();
        // Relative error of the power sum is far below this slack for desk-scale n.
        const long double slack = 1e-9L * abs_power_sum(*spec, 2 * s);
        r.tree_ok = phi + slack >= tree_f;
        r.tree_ratio = tree_f == 0 ? INFINITY : static_cast<double>(phi / tree_f);
        r.aggregate_ok = phi - slack > agg_f;
        r.aggregate_ratio = agg_f == 0 ? INFINITY : static_cast<double>(phi / agg_f);
        r.tree_margin = static_cast<double>((phi + slack - tree_f) / std::max(1.0L, tree_f));
        r.aggregate_margin = agg_f == 0 ? (phi - slack > 0 ? 1.0 : -1.0) : static_cast<double>((phi - slack - agg_f) / agg_f);
    }
    r.pass = r.tree_ok && r.aggregate_ok && r.binomial_ok && r.per_vertex_ok.value_or(true);
    return r;
}

inline nlohmann::json to_json(const WalkTable& t) {
    nlohmann::json phi = nlohmann::json::array();
    for (const auto& x : t.phi) phi.push_back(x.str());
    return {{"r_max", t.r_max}, {"phi", phi}};
}

inline nlohmann::json to_json(const TraceBoundReport& r) {
    nlohmann::json j = {{"n", r.n},
                        {"k", r.k},
                        {"s", r.s},
                        {"route", r.exact ? "exact" : "spectral"},
                        {"phi_2s", r.phi},
                        {"tree_bound", r.tree_bound},
                        {"tree_ok", r.tree_ok},
                        {"tree_ratio", r.tree_ratio},
                        {"aggregate_ok", r.aggregate_ok},
                        {"aggregate_ratio", r.aggregate_ratio},
                        {"binomial_ok", r.binomial_ok},
                        {"binomial_slack", r.binomial_slack},
                        {"tree_margin", r.tree_margin},
                        {"aggregate_margin", r.aggregate_margin},
                        {"pass", r.pass}};
    if (r.per_vertex_ok) {
        j["per_vertex_ok"] = *r.per_vertex_ok;
        j["min_vertex_slack"] = r.min_vertex_slack;
    }
    return j;
}

} // namespace regspec
