#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "regspec/error.hpp"

namespace regspec {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;

inline constexpr std::size_t unreachable = std::numeric_limits<std::size_t>::max();

// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
// Immutable once built; every constructor path validates symmetry and simplicity.
class Graph {
public:
    Graph() = default;

    // Takes ownership of adjacency lists, sorts them and checks the invariants.
    static Graph from_adjacency(std::vector<std::vector<Vertex>> adj) {
        const std::size_t n = adj.size();
        std::size_t degree_sum = 0;
        for (Vertex v = 0; v < n; ++v) {
            auto& list = adj[v];
            std::sort(list.begin(), list.end());
            for (std::size_t i = 0; i < list.size(); ++i) {
                if (list[i] >= n)
                    throw Error(ErrorKind::OutOfRange, "neighbor " + std::to_string(list[i]) + " of vertex " +
                                                          std::to_string(v) + " not in [0, " + std::to_string(n) + ")");
                if (list[i] == v)
                    throw Error(ErrorKind::SelfLoop, "vertex " + std::to_string(v) + " lists itself");
                if (i > 0 && list[i] == list[i - 1])
                    throw Error(ErrorKind::InvalidParams, "duplicate neighbor " + std::to_string(list[i]) +
                                                              " of vertex " + std::to_string(v));
            }
            degree_sum += list.size();
        }
        for (Vertex v = 0; v < n; ++v)
            for (Vertex u : adj[v])
                if (!std::binary_search(adj[u].begin(), adj[u].end(), v))
                    throw Error(ErrorKind::InvalidParams, "asymmetric adjacency between " + std::to_string(u) +
                                                              " and " + std::to_string(v));
        Graph g;
        g.adj_ = std::move(adj);
        g.edge_count_ = degree_sum / 2;
        return g;
    }

    std::size_t order() const noexcept { return adj_.size(); }
    std::size_t edge_count() const noexcept { return edge_count_; }
    std::size_t degree(Vertex v) const { return adj_.at(v).size(); }
    std::span<const Vertex> neighbors(Vertex v) const { return adj_.at(v); }

    bool adjacent(Vertex u, Vertex v) const {
        const auto& list = adj_.at(u);
        return std::binary_search(list.begin(), list.end(), v);
    }

    std::size_t max_degree() const noexcept {
        std::size_t d = 0;
        for (const auto& list : adj_) d = std::max(d, list.size());
        return d;
    }

    // Edges (u, v) with u < v in lexicographic order.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(edge_count_);
        for (Vertex u = 0; u < adj_.size(); ++u)
            for (Vertex v : adj_[u])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    const std::vector<std::vector<Vertex>>& adjacency() const noexcept { return adj_; }

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<std::vector<Vertex>> adj_;
    std::size_t edge_count_ = 0;
};

struct EdgeListBuild {
    Graph graph;
    std::size_t merged_duplicates = 0;
};

// Duplicate pairs (in either orientation) are merged and counted; loops and
// out-of-range indices are rejected.
inline EdgeListBuild build_from_edge_list(std::size_t n, std::span<const Edge> edges) {
    std::vector<std::vector<Vertex>> adj(n);
    for (const auto& [u, v] : edges) {
        if (u >= n || v >= n)
            throw Error(ErrorKind::OutOfRange, "edge (" + std::to_string(u) + ", " + std::to_string(v) +
                                                   ") has an index outside [0, " + std::to_string(n) + ")");
        if (u == v) throw Error(ErrorKind::SelfLoop, "edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::size_t merged = 0;
    for (auto& list : adj) {
        std::sort(list.begin(), list.end());
        const auto last = std::unique(list.begin(), list.end());
        merged += static_cast<std::size_t>(list.end() - last);
        list.erase(last, list.end());
    }
    return {Graph::from_adjacency(std::move(adj)), merged / 2};
}

inline Graph from_edge_list(std::size_t n, std::span<const Edge> edges) {
    return build_from_edge_list(n, edges).graph;
}

inline Graph from_edge_list(std::size_t n, std::initializer_list<Edge> edges) {
    return from_edge_list(n, std::span<const Edge>(edges.begin(), edges.size()));
}

// Returns k when every vertex has degree k. The empty graph (n = 0) is 0-regular.
inline std::optional<std::size_t> regularity(const Graph& g) {
    if (g.order() == 0) return 0;
    const std::size_t k = g.degree(0);
    for (Vertex v = 1; v < g.order(); ++v)
        if (g.degree(v) != k) return std::nullopt;
    return k;
}

// Dense symmetric 0/1 matrix, row-major.
class AdjacencyMatrix {
public:
    explicit AdjacencyMatrix(std::size_t n) : n_(n), entries_(n * n, 0) {}

    std::size_t order() const noexcept { return n_; }
    std::uint8_t operator()(std::size_t row, std::size_t col) const { return entries_[row * n_ + col]; }

    void set_edge(Vertex u, Vertex v) {
        entries_[u * n_ + v] = 1;
        entries_[v * n_ + u] = 1;
    }

private:
    std::size_t n_;
    std::vector<std::uint8_t> entries_;
};

inline AdjacencyMatrix adjacency_matrix(const Graph& g) {
    AdjacencyMatrix a(g.order());
    for (Vertex u = 0; u < g.order(); ++u)
        for (Vertex v : g.neighbors(u)) a.set_edge(u, v);
    return a;
}

// BFS distances from `source`, stopping after `max_depth` layers. Unvisited
// vertices hold `unreachable`.
inline std::vector<std::size_t> bfs_distances(const Graph& g, Vertex source,
                                              std::size_t max_depth = unreachable) {
    std::vector<std::size_t> dist(g.order(), unreachable);
    std::queue<Vertex> frontier;
    dist.at(source) = 0;
    frontier.push(source);
    while (!frontier.empty()) {
        const Vertex u = frontier.front();
        frontier.pop();
        if (dist[u] == max_depth) continue;
        for (Vertex w : g.neighbors(u)) {
            if (dist[w] != unreachable) continue;
            dist[w] = dist[u] + 1;
            frontier.push(w);
        }
    }
    return dist;
}

struct Components {
    std::size_t count = 0;
    std::vector<std::size_t> labels;
};

inline Components connected_components(const Graph& g) {
    Components c;
    c.labels.assign(g.order(), unreachable);
    std::vector<Vertex> stack;
    for (Vertex root = 0; root < g.order(); ++root) {
        if (c.labels[root] != unreachable) continue;
        c.labels[root] = c.count;
        stack.push_back(root);
        while (!stack.empty()) {
            const Vertex u = stack.back();
            stack.pop_back();
            for (Vertex w : g.neighbors(u)) {
                if (c.labels[w] != unreachable) continue;
                c.labels[w] = c.count;
                stack.push_back(w);
            }
        }
        ++c.count;
    }
    return c;
}

struct BipartiteResult {
    bool bipartite = true;
    std::vector<int> coloring;      // proper 2-coloring, set when bipartite
    std::vector<Vertex> odd_walk;   // closed walk v0..v0 of odd length, set otherwise
};

inline BipartiteResult is_bipartite(const Graph& g) {
    const std::size_t n = g.order();
    std::vector<std::size_t> dist(n, unreachable);
    std::vector<Vertex> parent(n, 0);
    for (Vertex root = 0; root < n; ++root) {
        if (dist[root] != unreachable) continue;
        dist[root] = 0;
        parent[root] = root;
        std::queue<Vertex> frontier;
        frontier.push(root);
        while (!frontier.empty()) {
            const Vertex u = frontier.front();
            frontier.pop();
            for (Vertex w : g.neighbors(u)) {
                if (dist[w] == unreachable) {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    frontier.push(w);
                } else if (dist[w] % 2 == dist[u] % 2) {
                    // root -> u, edge u-w, w -> root: length dist[u] + dist[w] + 1, odd.
                    BipartiteResult r;
                    r.bipartite = false;
                    std::vector<Vertex> up;
                    for (Vertex x = u; x != root; x = parent[x]) up.push_back(x);
                    up.push_back(root);
                    r.odd_walk.assign(up.rbegin(), up.rend());
                    for (Vertex x = w; x != root; x = parent[x]) r.odd_walk.push_back(x);
                    r.odd_walk.push_back(root);
                    return r;
                }
            }
        }
    }
    BipartiteResult r;
    r.coloring.resize(n);
    for (Vertex v = 0; v < n; ++v) r.coloring[v] = static_cast<int>(dist[v] % 2);
    return r;
}

// Number of triangles, by intersecting sorted neighbor lists over edges u < v < w.
inline std::size_t count_triangles(const Graph& g) {
    std::size_t count = 0;
    for (Vertex u = 0; u < g.order(); ++u)
        for (Vertex v : g.neighbors(u)) {
            if (v <= u) continue;
            const auto nu = g.neighbors(u);
            const auto nv = g.neighbors(v);
            auto a = std::upper_bound(nu.begin(), nu.end(), v);
            auto b = std::upper_bound(nv.begin(), nv.end(), v);
            while (a != nu.end() && b != nv.end()) {
                if (*a < *b) ++a;
                else if (*b < *a) ++b;
                else { ++count; ++a; ++b; }
            }
        }
    return count;
}

// Sorted vertex set at distance <= radius from v.
inline std::vector<Vertex> ball(const Graph& g, Vertex v, std::size_t radius) {
    if (v >= g.order()) throw Error(ErrorKind::OutOfRange, "ball centre " + std::to_string(v));
    const auto dist = bfs_distances(g, v, radius);
    std::vector<Vertex> out;
    for (Vertex u = 0; u < g.order(); ++u)
        if (dist[u] != unreachable) out.push_back(u);
    return out;
}

struct InducedSubgraph {
    Graph graph;
    std::vector<Vertex> original;   // original[i] = vertex of the parent graph
};

inline InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
    std::vector<Vertex> keep(vertices.begin(), vertices.end());
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    if (!keep.empty() && keep.back() >= g.order())
        throw Error(ErrorKind::OutOfRange, "vertex " + std::to_string(keep.back()) + " not in graph");

    std::vector<std::size_t> local(g.order(), unreachable);
    for (std::size_t i = 0; i < keep.size(); ++i) local[keep[i]] = i;
    std::vector<std::vector<Vertex>> adj(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (Vertex w : g.neighbors(keep[i]))
            if (local[w] != unreachable) adj[i].push_back(local[w]);
    return {Graph::from_adjacency(std::move(adj)), std::move(keep)};
}

} // namespace regspec
