#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "json.hpp"
#include "regspec/graph.hpp"

namespace regspec {

inline constexpr double default_eigen_tol = 1e-10;
inline constexpr double default_count_tol = 1e-8;

// Above this order eigenvectors are not formed; residual_tol then holds the
// a-priori backward-error bound instead of a measured residual.
inline constexpr std::size_t residual_measure_cap = 512;

// Adjacency eigenvalues with multiplicity, sorted non-increasing.
struct Spectrum {
    std::size_t n = 0;
    std::vector<double> values;
    double residual_tol = 0.0;   // max ||Av - lambda v|| over returned pairs (or its bound)
    bool residual_measured = false;
};

inline Spectrum eigenvalues(const AdjacencyMatrix& a, double tol = default_eigen_tol) {
    if (!(tol > 0.0)) throw Error(ErrorKind::DomainError, "eigen tolerance must be positive");
    const std::size_t n = a.order();
    Spectrum s;
    s.n = n;
    if (n == 0) {
        s.residual_measured = true;
        return s;
    }

    Eigen::MatrixXd m(n, n);
    std::size_t max_degree = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t deg = 0;
        for (std::size_t j = 0; j < n; ++j) {
            m(i, j) = a(i, j);
            deg += a(i, j);
        }
        max_degree = std::max(max_degree, deg);
    }

    const bool measure = n <= residual_measure_cap;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        m, measure ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw Error(ErrorKind::ConvergenceFailure, "symmetric eigensolver did not converge (n=" + std::to_string(n) + ")");

    const auto& vals = solver.eigenvalues();
    s.values.assign(vals.data(), vals.data() + n);
    std::sort(s.values.begin(), s.values.end(), std::greater<>());

    const double scale = static_cast<double>(std::max<std::size_t>(max_degree, 1));
    if (measure) {
        const Eigen::MatrixXd residual = m * solver.eigenvectors() - solver.eigenvectors() * vals.asDiagonal();
        s.residual_tol = residual.colwise().norm().maxCoeff();
        s.residual_measured = true;
    } else {
        s.residual_tol = 8.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon() * scale;
    }
    if (s.residual_tol > tol * static_cast<double>(n) * scale)
        throw Error(ErrorKind::ConvergenceFailure, "residual " + std::to_string(s.residual_tol) + " exceeds contract");
    return s;
}

inline Spectrum spectrum(const Graph& g, double tol = default_eigen_tol) {
    return eigenvalues(adjacency_matrix(g), tol);
}

// l-th greatest eigenvalue, 1-based.
inline double lambda_l(const Spectrum& s, std::size_t l) {
    if (l < 1 || l > s.n)
        throw Error(ErrorKind::IndexOutOfRange, "lambda_" + std::to_string(l) + " of a spectrum of order " + std::to_string(s.n));
    return s.values[l - 1];
}

// l-th least eigenvalue, 1-based.
inline double mu_l(const Spectrum& s, std::size_t l) {
    if (l < 1 || l > s.n)
        throw Error(ErrorKind::IndexOutOfRange, "mu_" + std::to_string(l) + " of a spectrum of order " + std::to_string(s.n));
    return s.values[s.n - l];
}

inline std::size_t count_at_least(const Spectrum& s, double threshold, double ctol = default_count_tol) {
    return static_cast<std::size_t>(
        std::count_if(s.values.begin(), s.values.end(), [&](double x) { return x >= threshold - ctol; }));
}

inline std::size_t count_at_most(const Spectrum& s, double threshold, double ctol = default_count_tol) {
    return static_cast<std::size_t>(
        std::count_if(s.values.begin(), s.values.end(), [&](double x) { return x <= threshold + ctol; }));
}

// sum_i lambda_i^r in extended precision.
inline long double power_sum(const Spectrum& s, unsigned r) {
    long double total = 0.0L;
    for (double x : s.values) total += std::pow(static_cast<long double>(x), static_cast<int>(r));
    return total;
}

inline long double abs_power_sum(const Spectrum& s, unsigned r) {
    long double total = 0.0L;
    for (double x : s.values) total += std::pow(std::fabs(static_cast<long double>(x)), static_cast<int>(r));
    return total;
}

struct MomentCheck {
    double sum1 = 0, sum2 = 0, sum3 = 0;
    double expected2 = 0, expected3 = 0;   // 2|E| and 6 c_3
    std::size_t components = 0;
    std::size_t top_multiplicity = 0;      // multiplicity of k (regular graphs only)
    bool regular = false;
    double tolerance = 0;
    bool pass = false;
};

// Checks the first three moments against edge and triangle counts, and for
// k-regular graphs the multiplicity of k against the component count.
// Moment r passes when |sum - expected| <= 1e-8 * max(1, sum |lambda|^r).
inline MomentCheck moment_check(const Spectrum& s, const Graph& g) {
    MomentCheck r;
    r.sum1 = static_cast<double>(power_sum(s, 1));
    r.sum2 = static_cast<double>(power_sum(s, 2));
    r.sum3 = static_cast<double>(power_sum(s, 3));
    r.expected2 = 2.0 * static_cast<double>(g.edge_count());
    r.expected3 = 6.0 * static_cast<double>(count_triangles(g));
    r.components = connected_components(g).count;

    auto within = [](double got, double want, long double scale) {
        return std::fabs(got - want) <= 1e-8 * std::max<double>(1.0, static_cast<double>(scale));
    };
    bool ok = s.n == g.order() && within(r.sum1, 0.0, abs_power_sum(s, 1)) &&
              within(r.sum2, r.expected2, abs_power_sum(s, 2)) && within(r.sum3, r.expected3, abs_power_sum(s, 3));
    r.tolerance = 1e-8;

    if (const auto k = regularity(g); k && g.order() > 0) {
        r.regular = true;
        const double kk = static_cast<double>(*k);
        const double cluster = std::max(1e-9, 100.0 * s.residual_tol);
        r.top_multiplicity = static_cast<std::size_t>(
            std::count_if(s.values.begin(), s.values.end(), [&](double x) { return std::fabs(x - kk) <= cluster; }));
        ok = ok && r.top_multiplicity == r.components;
    }
    r.pass = ok;
    return r;
}

inline nlohmann::json to_json(const Spectrum& s) {
    return {{"n", s.n}, {"values", s.values}, {"tol", s.residual_tol}};
}

inline Spectrum spectrum_from_json(const nlohmann::json& j) {
    Spectrum s;
    try {
        s.n = j.at("n").get<std::size_t>();
        s.values = j.at("values").get<std::vector<double>>();
        s.residual_tol = j.at("tol").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("spectrum json: ") + e.what());
    }
    if (s.values.size() != s.n) throw Error(ErrorKind::ParseError, "spectrum value count does not match n");
    if (!std::is_sorted(s.values.begin(), s.values.end(), std::greater<>()))
        throw Error(ErrorKind::ParseError, "spectrum values must be non-increasing");
    return s;
}

} // namespace regspec
