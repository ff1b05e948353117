#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "regspec/cycles_girth.hpp"
#include "regspec/graph.hpp"
#include "regspec/spectra.hpp"
#include "regspec/walks.hpp"

namespace regspec {

inline constexpr std::size_t s0_scan_cap = 1'000'000;

// ---------------------------------------------------------------------------
// Constants
// ---------------------------------------------------------------------------

struct SerreConstants {
    double epsilon = 0;
    std::size_t k = 0;
    std::size_t s0 = 0;
    std::size_t g = 0;          // 2 * s0, the oddgirth requirement for the least-eigenvalue side
    double c = 0;               // 1 / ((2k/a)^(2 s0) - 1)
    double log2_inv_c = 0;      // log2(1/c), finite even when c underflows
    double threshold = 0;       // (2 - epsilon) sqrt(k - 1)
};

namespace detail {

inline void check_serre_domain(double epsilon, std::size_t k) {
    if (!(epsilon > 0.0 && epsilon <= 2.0))
        throw Error(ErrorKind::DomainError, "epsilon must lie in (0, 2], got " + std::to_string(epsilon));
    if (k < 2) throw Error(ErrorKind::DomainError, "degree k must be >= 2, got " + std::to_string(k));
}

// a = k + (2 - eps) sqrt(k-1): the shifted threshold; b = k + 2 sqrt(k-1).
inline long double shifted_threshold(double epsilon, std::size_t k) {
    return static_cast<long double>(k) + (2.0L - epsilon) * std::sqrt(static_cast<long double>(k) - 1.0L);
}

inline long double shifted_tree_radius(std::size_t k) {
    return static_cast<long double>(k) + 2.0L * std::sqrt(static_cast<long double>(k) - 1.0L);
}

} // namespace detail

// Whether b^(2s) / (2 (s+1)^2) > 2 a^(2s), i.e. 2s ln(b/a) > ln 4 + 2 ln(s+1).
// Exact ties (e.g. eps=2, k=2, s=3) count as failures.
inline bool s0_inequality_holds(double epsilon, std::size_t k, std::size_t s) {
    detail::check_serre_domain(epsilon, k);
    const long double a = detail::shifted_threshold(epsilon, k);
    const long double b = detail::shifted_tree_radius(k);
    const long double lhs = 2.0L * static_cast<long double>(s) * std::log(b / a);
    const long double rhs = std::log(4.0L) + 2.0L * std::log(static_cast<long double>(s) + 1.0L);
    return lhs - rhs > 1e-12L * std::max(1.0L, std::fabs(rhs));
}

inline std::size_t compute_s0(double epsilon, std::size_t k) {
    detail::check_serre_domain(epsilon, k);
    for (std::size_t s = 1; s <= s0_scan_cap; ++s)
        if (s0_inequality_holds(epsilon, k, s)) return s;
    throw Error(ErrorKind::ScanCapExceeded, "no s0 below " + std::to_string(s0_scan_cap));
}

inline SerreConstants constants(double epsilon, std::size_t k) {
    SerreConstants out;
    out.epsilon = epsilon;
    out.k = k;
    out.s0 = compute_s0(epsilon, k);
    out.g = 2 * out.s0;
    const long double a = detail::shifted_threshold(epsilon, k);
    out.threshold = (2.0 - epsilon) * std::sqrt(static_cast<double>(k) - 1.0);
    // x = 2 s0 ln(2k/a); 1/c = expm1(x) and log(1/c) = x + log1p(-e^-x).
    const long double x = 2.0L * static_cast<long double>(out.s0) * std::log(2.0L * k / a);
    const long double log_inv_c = x + std::log1p(-std::exp(-x));
    out.log2_inv_c = static_cast<double>(log_inv_c / std::log(2.0L));
    out.c = static_cast<double>(std::exp(-log_inv_c));
    return out;
}

// sum_{j=0}^{s} C(2s,2j) k^(2j) x^(2s-2j) == ((k+x)^(2s) + (k-x)^(2s)) / 2, exactly.
inline bool binomial_even_split_identity(unsigned s, long k, long x) {
    using boost::multiprecision::pow;
    BigInt lhs = 0;
    for (unsigned j = 0; j <= s; ++j) lhs += binomial(2 * s, 2 * j) * pow(BigInt(k), 2 * j) * pow(BigInt(x), 2 * s - 2 * j);
    const BigInt rhs = pow(BigInt(k + x), 2 * s) + pow(BigInt(k - x), 2 * s);
    return 2 * lhs == rhs;
}

// Lower bound on m/n from the unconditional trace argument at a given s:
// (b^(2s)/(2(s+1)^2) - a^(2s)) / ((2k)^(2s) - a^(2s)), scaled by (2k)^(2s).
inline long double trace_fraction_bound(double epsilon, std::size_t k, std::size_t s) {
    const long double two_k = 2.0L * static_cast<long double>(k);
    const long double pa = std::pow(detail::shifted_threshold(epsilon, k) / two_k, 2.0L * s);
    const long double pb = std::pow(detail::shifted_tree_radius(k) / two_k, 2.0L * s);
    const long double sp1 = static_cast<long double>(s) + 1.0L;
    return (pb / (2.0L * sp1 * sp1) - pa) / (1.0L - pa);
}

struct ConstantScaleRow {
    double epsilon = 0;
    std::size_t k = 0;
    std::size_t s0 = 0;
    double log2_inv_c = 0;
    double scale = 0;   // sqrt(k)/eps * log(sqrt(k)/eps)
    double ratio = 0;   // log2_inv_c / scale
};

inline std::vector<ConstantScaleRow> constant_scale_table(const std::vector<double>& eps_grid,
                                                          const std::vector<std::size_t>& k_list) {
    std::vector<ConstantScaleRow> rows;
    for (double eps : eps_grid)
        for (std::size_t k : k_list) {
            const auto c = constants(eps, k);
            const double base = std::sqrt(static_cast<double>(k)) / eps;
            const double scale = base * std::log(base);
            rows.push_back({eps, k, c.s0, c.log2_inv_c, scale, scale > 0 ? c.log2_inv_c / scale : 0.0});
        }
    return rows;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

enum class Theorem { T1, T3, T4_step, walk_bound, certificate };
enum class Verdict { pass, fail, hypothesis_not_met };

inline std::string_view to_string(Theorem t) {
    switch (t) {
    case Theorem::T1: return "T1";
    case Theorem::T3: return "T3";
    case Theorem::T4_step: return "T4_step";
    case Theorem::walk_bound: return "walk_bound";
    case Theorem::certificate: return "certificate";
    }
    return "?";
}

inline std::string_view to_string(Verdict v) {
    switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::hypothesis_not_met: return "hypothesis-not-met";
    }
    return "?";
}

struct VerificationReport {
    std::string graph_id;
    Theorem theorem = Theorem::T1;
    std::optional<double> epsilon;
    std::size_t k = 0;
    std::size_t n = 0;
    std::optional<SerreConstants> constants;
    std::map<std::string, double> params;   // s, l, r as applicable
    std::size_t m = 0;
    double cn = 0;
    Verdict verdict = Verdict::fail;
    std::map<std::string, double> margins;
    nlohmann::json witnesses = nlohmann::json::object();
    nlohmann::json diagnostics = nlohmann::json::object();

    // Ordering key for deterministic aggregation.
    std::string key() const {
        std::string out = graph_id + "|" + std::string(to_string(theorem));
        if (epsilon) out += "|eps=" + std::to_string(*epsilon);
        for (const auto& [name, value] : params) out += "|" + name + "=" + std::to_string(value);
        return out;
    }
};

inline Verdict verdict_from_margins(const std::map<std::string, double>& margins) {
    for (const auto& [name, value] : margins)
        if (!(value > 0.0)) return Verdict::fail;
    return Verdict::pass;
}

inline nlohmann::json to_json(const VerificationReport& r) {
    nlohmann::json j;
    j["graph_id"] = r.graph_id;
    j["theorem"] = std::string(to_string(r.theorem));
    j["epsilon"] = r.epsilon ? nlohmann::json(*r.epsilon) : nlohmann::json(nullptr);
    j["k"] = r.k;
    j["n"] = r.n;
    if (r.constants) {
        j["s0"] = r.constants->s0;
        j["g"] = r.constants->g;
        j["c"] = r.constants->c;
        j["threshold"] = r.constants->threshold;
    }
    j["m"] = r.m;
    j["cn"] = r.cn;
    j["verdict"] = std::string(to_string(r.verdict));
    j["margins"] = r.margins;
    if (!r.params.empty()) j["params"] = r.params;
    if (!r.witnesses.empty()) j["witnesses"] = r.witnesses;
    if (!r.diagnostics.empty()) j["diagnostics"] = r.diagnostics;
    return j;
}

// ---------------------------------------------------------------------------
// Theorem checks
// ---------------------------------------------------------------------------

namespace detail {

inline std::size_t require_regular(const Graph& g) {
    const auto k = regularity(g);
    if (!k) throw Error(ErrorKind::NotRegular, "graph is not regular");
    return *k;
}

inline std::size_t certificate_scan_limit(const SerreConstants& c) { return std::max<std::size_t>(40, 2 * c.s0); }

} // namespace detail

// Counts eigenvalues >= (2 - eps) sqrt(k-1) and requires m > c n.
inline VerificationReport verify_theorem1(const Graph& g, double epsilon, const Spectrum& spec,
                                          std::string graph_id = "graph", double ctol = default_count_tol) {
    const std::size_t k = detail::require_regular(g);
    const auto c = constants(epsilon, k);

    VerificationReport r;
    r.graph_id = std::move(graph_id);
    r.theorem = Theorem::T1;
    r.epsilon = epsilon;
    r.k = k;
    r.n = g.order();
    r.constants = c;
    r.m = count_at_least(spec, c.threshold, ctol);
    r.cn = c.c * static_cast<double>(r.n);
    r.margins["m_minus_cn"] = static_cast<double>(r.m) - r.cn;
    r.verdict = verdict_from_margins(r.margins);

    // Best fraction bound over the certificate s-range; a side diagnostic, the verdict uses s0.
    std::size_t best_s = 1;
    long double best = trace_fraction_bound(epsilon, k, 1);
    for (std::size_t s = 2; s <= detail::certificate_scan_limit(c); ++s)
        if (const auto v = trace_fraction_bound(epsilon, k, s); v > best) {
            best = v;
            best_s = s;
        }
    r.diagnostics["scan_best_s"] = best_s;
    r.diagnostics["scan_best_fraction"] = static_cast<double>(best);
    r.diagnostics["scan_bound_holds"] = static_cast<long double>(r.m) > best * static_cast<long double>(r.n);
    return r;
}

inline VerificationReport verify_theorem1(const Graph& g, double epsilon, std::string graph_id = "graph") {
    detail::require_regular(g);
    return verify_theorem1(g, epsilon, spectrum(g), std::move(graph_id));
}

// Least-eigenvalue analogue: applies only when oddgirth > g = 2 s0.
inline VerificationReport verify_theorem3(const Graph& g, double epsilon, const Spectrum& spec,
                                          std::string graph_id = "graph", double ctol = default_count_tol) {
    const std::size_t k = detail::require_regular(g);
    const auto c = constants(epsilon, k);

    VerificationReport r;
    r.graph_id = std::move(graph_id);
    r.theorem = Theorem::T3;
    r.epsilon = epsilon;
    r.k = k;
    r.n = g.order();
    r.constants = c;
    r.cn = c.c * static_cast<double>(r.n);
    const auto og = oddgirth(g);
    r.witnesses["oddgirth"] = to_json(og);
    if (og && *og <= c.g) {
        r.verdict = Verdict::hypothesis_not_met;
        r.margins["oddgirth_minus_g"] = static_cast<double>(*og) - static_cast<double>(c.g);
        return r;
    }
    r.m = count_at_most(spec, -c.threshold, ctol);
    r.margins["m_minus_cn"] = static_cast<double>(r.m) - r.cn;
    r.verdict = verdict_from_margins(r.margins);
    return r;
}

inline VerificationReport verify_theorem3(const Graph& g, double epsilon, std::string graph_id = "graph") {
    detail::require_regular(g);
    return verify_theorem3(g, epsilon, spectrum(g), std::move(graph_id));
}

// ---------------------------------------------------------------------------
// Eigenvalue certificates from Tr((kI -+ A)^(2s))
// ---------------------------------------------------------------------------

enum class CertificateKind { lambda_lower, mu_upper };

struct BoundCertificate {
    std::size_t l = 0;
    std::size_t s_used = 0;
    CertificateKind kind = CertificateKind::mu_upper;
    double value = 0;
    bool vacuous = false;
};

namespace detail {

// sum_i ((k + sign*lambda_i) / 2k)^(2s), i.e. Tr((kI + sign A)^(2s)) / (2k)^(2s),
// with a bound on its error from eigenvalue perturbation and summation.
struct ScaledTrace {
    long double value = 0.0L;
    long double error = 0.0L;
};

inline ScaledTrace scaled_shifted_trace(const Spectrum& spec, std::size_t k, int sign, std::size_t s) {
    const long double two_k = 2.0L * static_cast<long double>(k);
    const long double eta = std::max<long double>(
        spec.residual_tol, static_cast<long double>(spec.n) * std::numeric_limits<double>::epsilon() * k);
    const long double h = eta / two_k;
    const long double e = 2.0L * static_cast<long double>(s);
    ScaledTrace t;
    for (double x : spec.values) {
        const long double base = (static_cast<long double>(k) + sign * static_cast<long double>(x)) / two_k;
        t.value += std::pow(base, e);
        t.error += e * h * std::pow(std::fabs(base) + h, e - 1.0L);
    }
    t.error += static_cast<long double>(spec.n) * std::numeric_limits<long double>::epsilon() * t.value;
    return t;
}

// Part of the trace above the l terms that may be as large as 1, after
// subtracting the error bound; shrinking it keeps both certificates valid.
inline long double certified_excess(const Spectrum& spec, std::size_t k, int sign, std::size_t l, std::size_t s) {
    const auto t = scaled_shifted_trace(spec, k, sign, s);
    return t.value - t.error - static_cast<long double>(l);
}

inline void check_certificate_args(const Spectrum& spec, std::size_t k, std::size_t l, std::size_t s) {
    if (k < 1) throw Error(ErrorKind::DomainError, "certificate needs k >= 1");
    if (l < 1 || l >= spec.n)
        throw Error(ErrorKind::IndexOutOfRange, "certificate needs 1 <= l < n, got l=" + std::to_string(l));
    if (s < 1) throw Error(ErrorKind::DomainError, "certificate needs s >= 1");
}

} // namespace detail

// T <= (n-l)(k - mu_l)^(2s) + l (2k)^(2s) gives mu_l <= k - ((T - l(2k)^(2s)) / (n-l))^(1/2s).
inline BoundCertificate mu_certificate(const Spectrum& spec, std::size_t k, std::size_t l, std::size_t s) {
    detail::check_certificate_args(spec, k, l, s);
    BoundCertificate cert{l, s, CertificateKind::mu_upper, static_cast<double>(k), true};
    const long double excess = detail::certified_excess(spec, k, -1, l, s);
    if (excess > 0.0L) {
        const long double root = std::pow(excess / static_cast<long double>(spec.n - l), 1.0L / (2.0L * s));
        cert.value = static_cast<double>(static_cast<long double>(k) - 2.0L * static_cast<long double>(k) * root);
        cert.vacuous = false;
    }
    return cert;
}

// Mirror on Tr((kI + A)^(2s)): lambda_l >= ((T+ - l(2k)^(2s)) / (n-l))^(1/2s) - k.
inline BoundCertificate lambda_certificate(const Spectrum& spec, std::size_t k, std::size_t l, std::size_t s) {
    detail::check_certificate_args(spec, k, l, s);
    BoundCertificate cert{l, s, CertificateKind::lambda_lower, -static_cast<double>(k), true};
    const long double excess = detail::certified_excess(spec, k, +1, l, s);
    if (excess > 0.0L) {
        const long double root = std::pow(excess / static_cast<long double>(spec.n - l), 1.0L / (2.0L * s));
        cert.value = static_cast<double>(2.0L * static_cast<long double>(k) * root - static_cast<long double>(k));
        cert.vacuous = false;
    }
    return cert;
}

inline BoundCertificate mu_certificate(const Graph& g, std::size_t l, std::size_t s) {
    return mu_certificate(spectrum(g), detail::require_regular(g), l, s);
}

inline BoundCertificate lambda_certificate(const Graph& g, std::size_t l, std::size_t s) {
    return lambda_certificate(spectrum(g), detail::require_regular(g), l, s);
}

inline BoundCertificate best_mu_certificate(const Spectrum& spec, std::size_t k, std::size_t l, std::size_t s_max) {
    auto best = mu_certificate(spec, k, l, 1);
    for (std::size_t s = 2; s <= s_max; ++s)
        if (const auto c = mu_certificate(spec, k, l, s); c.value < best.value) best = c;
    return best;
}

inline BoundCertificate best_lambda_certificate(const Spectrum& spec, std::size_t k, std::size_t l, std::size_t s_max) {
    auto best = lambda_certificate(spec, k, l, 1);
    for (std::size_t s = 2; s <= s_max; ++s)
        if (const auto c = lambda_certificate(spec, k, l, s); c.value > best.value) best = c;
    return best;
}

inline nlohmann::json to_json(const BoundCertificate& c) {
    return {{"l", c.l},
            {"s_used", c.s_used},
            {"kind", c.kind == CertificateKind::lambda_lower ? "lambda_lower" : "mu_upper"},
            {"value", c.value},
            {"vacuous", c.vacuous}};
}

// Soundness report for l = 1..l_max over s = 1..s_max.
inline VerificationReport certificate_report(const Graph& g, const Spectrum& spec, std::size_t l_max, std::size_t s_max,
                                             std::string graph_id = "graph", double ctol = 1e-6) {
    const std::size_t k = detail::require_regular(g);
    VerificationReport r;
    r.graph_id = std::move(graph_id);
    r.theorem = Theorem::certificate;
    r.k = k;
    r.n = g.order();
    r.params["l_max"] = static_cast<double>(l_max);
    r.params["s_max"] = static_cast<double>(s_max);
    nlohmann::json certs = nlohmann::json::array();
    for (std::size_t l = 1; l <= l_max && l < spec.n; ++l) {
        double worst_lambda = INFINITY, worst_mu = INFINITY;
        for (std::size_t s = 1; s <= s_max; ++s) {
            worst_lambda = std::min(worst_lambda, lambda_l(spec, l) + ctol - lambda_certificate(spec, k, l, s).value);
            worst_mu = std::min(worst_mu, mu_certificate(spec, k, l, s).value - (mu_l(spec, l) - ctol));
        }
        r.margins["lambda_sound_l" + std::to_string(l)] = worst_lambda;
        r.margins["mu_sound_l" + std::to_string(l)] = worst_mu;
        certs.push_back({{"l", l},
                         {"lambda_l", lambda_l(spec, l)},
                         {"mu_l", mu_l(spec, l)},
                         {"best_lambda", to_json(best_lambda_certificate(spec, k, l, s_max))},
                         {"best_mu", to_json(best_mu_certificate(spec, k, l, s_max))}});
    }
    r.witnesses["certificates"] = certs;
    r.verdict = verdict_from_margins(r.margins);
    return r;
}

// ---------------------------------------------------------------------------
// Sequence diagnostics (trend evidence only)
// ---------------------------------------------------------------------------

struct DiagnosticRow {
    std::string graph_id;
    std::size_t n = 0;
    std::size_t k = 0;
    double lambda_l = 0;
    double mu_l = 0;
    CycleLength oddgirth;
    std::map<std::size_t, double> odd_cycle_density;   // length -> c_len / n
    double t1_fraction = 0;                             // #{lambda >= threshold} / n
    double t3_fraction = 0;                             // #{lambda <= -threshold} / n
    double lambda_certificate = 0;                      // best over s
    double mu_certificate = 0;
};

struct LadderEntry {
    std::string id;
    Graph graph;
};

inline std::vector<DiagnosticRow> sequence_diagnostics(const std::vector<LadderEntry>& ladder, double epsilon,
                                                       std::size_t l, const std::vector<std::size_t>& odd_lengths,
                                                       std::size_t census_cap = default_census_cap) {
    std::size_t longest = 0;
    for (std::size_t len : odd_lengths) {
        if (len % 2 == 0) throw Error(ErrorKind::InvalidParams, "odd cycle lengths only, got " + std::to_string(len));
        longest = std::max(longest, len);
    }
    std::vector<DiagnosticRow> rows;
    for (const auto& entry : ladder) {
        const std::size_t k = detail::require_regular(entry.graph);
        const auto spec = spectrum(entry.graph);
        const auto c = constants(epsilon, k);
        DiagnosticRow row;
        row.graph_id = entry.id;
        row.n = entry.graph.order();
        row.k = k;
        row.lambda_l = lambda_l(spec, l);
        row.mu_l = mu_l(spec, l);
        row.oddgirth = oddgirth(entry.graph);
        if (longest >= 3) {
            const auto census = cycle_census(entry.graph, longest, census_cap);
            for (std::size_t len : odd_lengths)
                row.odd_cycle_density[len] = static_cast<double>(census.counts[len]) / static_cast<double>(row.n);
        }
        row.t1_fraction = static_cast<double>(count_at_least(spec, c.threshold)) / static_cast<double>(row.n);
        row.t3_fraction = static_cast<double>(count_at_most(spec, -c.threshold)) / static_cast<double>(row.n);
        const std::size_t s_max = detail::certificate_scan_limit(c);
        row.lambda_certificate = best_lambda_certificate(spec, k, l, s_max).value;
        row.mu_certificate = best_mu_certificate(spec, k, l, s_max).value;
        rows.push_back(std::move(row));
    }
    return rows;
}

inline nlohmann::json to_json(const DiagnosticRow& row) {
    nlohmann::json density = nlohmann::json::object();
    for (const auto& [len, d] : row.odd_cycle_density) density["c" + std::to_string(len) + "_per_n"] = d;
    return {{"graph_id", row.graph_id},
            {"n", row.n},
            {"k", row.k},
            {"lambda_l", row.lambda_l},
            {"mu_l", row.mu_l},
            {"oddgirth", to_json(row.oddgirth)},
            {"odd_cycle_density", density},
            {"t1_fraction", row.t1_fraction},
            {"t3_fraction", row.t3_fraction},
            {"lambda_certificate", row.lambda_certificate},
            {"mu_certificate", row.mu_certificate}};
}

} // namespace regspec
