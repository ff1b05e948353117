#pragma once
// Slow, independent reference computations used only by the tests.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "regspec/graph.hpp"

namespace oracle {

using boost::multiprecision::cpp_int;
using Matrix = std::vector<std::vector<cpp_int>>;

inline Matrix dense(const regspec::Graph& g) {
    const std::size_t n = g.order();
    Matrix a(n, std::vector<cpp_int>(n, 0));
    for (auto [u, v] : g.edges()) a[u][v] = a[v][u] = 1;
    return a;
}

inline Matrix multiply(const Matrix& x, const Matrix& y) {
    const std::size_t n = x.size();
    Matrix z(n, std::vector<cpp_int>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l) {
            if (x[i][l] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) z[i][j] += x[i][l] * y[l][j];
        }
    return z;
}

// diag[r][v] = (A^r)_vv by repeated dense multiplication.
inline std::vector<std::vector<cpp_int>> power_diagonals(const regspec::Graph& g, std::size_t r_max) {
    const std::size_t n = g.order();
    const Matrix a = dense(g);
    Matrix p(n, std::vector<cpp_int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) p[i][i] = 1;
    std::vector<std::vector<cpp_int>> out;
    for (std::size_t r = 0; r <= r_max; ++r) {
        std::vector<cpp_int> d(n);
        for (std::size_t i = 0; i < n; ++i) d[i] = p[i][i];
        out.push_back(std::move(d));
        p = multiply(p, a);
    }
    return out;
}

// det(xI - A) by Faddeev-LeVerrier; coefficient of x^i at index i.
inline std::vector<cpp_int> characteristic_polynomial(const regspec::Graph& g) {
    const std::size_t n = g.order();
    const Matrix a = dense(g);
    std::vector<cpp_int> c(n + 1, 0);
    c[n] = 1;
    Matrix m(n, std::vector<cpp_int>(n, 0));
    for (std::size_t k = 1; k <= n; ++k) {
        Matrix next = multiply(a, m);
        for (std::size_t i = 0; i < n; ++i) next[i][i] += c[n - k + 1];
        m = std::move(next);
        const Matrix am = multiply(a, m);
        cpp_int trace = 0;
        for (std::size_t i = 0; i < n; ++i) trace += am[i][i];
        c[n - k] = -trace / static_cast<long>(k);
    }
    return c;
}

inline std::vector<cpp_int> polynomial_from_roots(const std::vector<long>& roots) {
    std::vector<cpp_int> p{1};
    for (long r : roots) {
        std::vector<cpp_int> q(p.size() + 1, 0);
        for (std::size_t i = 0; i < p.size(); ++i) {
            q[i + 1] += p[i];
            q[i] -= p[i] * r;
        }
        p = std::move(q);
    }
    return p;
}

// counts[r] = number of r-cycles: every r-subset, every cyclic order of it
// starting at its least vertex; each cycle is seen once per direction.
inline std::vector<std::uint64_t> cycle_census(const regspec::Graph& g, std::size_t r_max) {
    const std::size_t n = g.order();
    std::vector<std::uint64_t> counts(r_max + 1, 0);
    for (std::size_t r = 3; r <= std::min(r_max, n); ++r) {
        std::vector<char> pick(n, 0);
        std::fill(pick.begin(), pick.begin() + static_cast<long>(r), 1);
        std::uint64_t directed = 0;
        do {
            std::vector<regspec::Vertex> subset;
            for (std::size_t i = 0; i < n; ++i)
                if (pick[i]) subset.push_back(i);
            std::vector<regspec::Vertex> rest(subset.begin() + 1, subset.end());
            do {
                regspec::Vertex prev = subset[0];
                bool ok = true;
                for (auto v : rest) {
                    if (!g.adjacent(prev, v)) { ok = false; break; }
                    prev = v;
                }
                if (ok && g.adjacent(prev, subset[0])) ++directed;
            } while (std::next_permutation(rest.begin(), rest.end()));
        } while (std::prev_permutation(pick.begin(), pick.end()));
        counts[r] = directed / 2;
    }
    return counts;
}

// Catalan numbers by the convolution recurrence.
inline std::vector<cpp_int> catalan_table(std::size_t s_max) {
    std::vector<cpp_int> c(s_max + 1, 0);
    c[0] = 1;
    for (std::size_t m = 1; m <= s_max; ++m)
        for (std::size_t i = 0; i < m; ++i) c[m] += c[i] * c[m - 1 - i];
    return c;
}

// Closed walks of length 2s at the root of an explicit k-regular tree of depth s.
inline cpp_int tree_closed_walks(unsigned s, unsigned k) {
    std::vector<std::vector<regspec::Vertex>> adj(1);
    std::vector<regspec::Vertex> layer{0};
    for (unsigned d = 0; d < s; ++d) {
        std::vector<regspec::Vertex> next;
        for (auto v : layer) {
            const unsigned children = d == 0 ? k : k - 1;
            for (unsigned c = 0; c < children; ++c) {
                const regspec::Vertex w = adj.size();
                adj.emplace_back();
                adj[v].push_back(w);
                adj[w].push_back(v);
                next.push_back(w);
            }
        }
        layer = std::move(next);
    }
    std::vector<cpp_int> x(adj.size(), 0);
    x[0] = 1;
    for (unsigned step = 0; step < 2 * s; ++step) {
        std::vector<cpp_int> y(adj.size(), 0);
        for (std::size_t v = 0; v < adj.size(); ++v)
            if (x[v] != 0)
                for (auto w : adj[v]) y[w] += x[v];
        x = std::move(y);
    }
    return x[0];
}

using Real = boost::multiprecision::cpp_bin_float_50;

// 1 / ((2k / (k + (2 - eps) sqrt(k - 1)))^(2 s0) - 1), evaluated in 50 digits.
inline Real constant_c(const Real& eps, unsigned k, unsigned s0) {
    using boost::multiprecision::pow;
    using boost::multiprecision::sqrt;
    const Real base = Real(2 * k) / (Real(k) + (2 - eps) * sqrt(Real(k - 1)));
    return 1 / (pow(base, 2 * s0) - 1);
}

}  // namespace oracle
