#pragma once

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "regspec/cycles_girth.hpp"
#include "regspec/generators.hpp"
#include "regspec/serre.hpp"
#include "regspec/spectra.hpp"
#include "regspec/walks.hpp"

namespace regspec {

enum class EntryKind { base, line, bipartite_double };

struct CorpusEntry {
    std::string id;
    Graph graph;
    EntryKind kind = EntryKind::base;
};

inline std::string line_id(const std::string& id) { return "line_of(" + id + ")"; }
inline std::string double_id(const std::string& id) { return "double_of(" + id + ")"; }

// Fixed verification corpus: small named families, seeded random regular
// graphs, and their line graphs (k >= 3 bases) and bipartite doubles.
inline std::vector<CorpusEntry> default_corpus() {
    std::vector<std::string> specs;
    for (int n : {3, 4, 5, 6, 7, 8, 9, 10, 11, 17, 64, 101, 1001}) specs.push_back("cycle:n=" + std::to_string(n));
    for (int n = 3; n <= 12; ++n) specs.push_back("complete:n=" + std::to_string(n));
    for (int a = 2; a <= 5; ++a) specs.push_back("complete_bipartite:a=" + std::to_string(a) + ",b=" + std::to_string(a));
    for (int d = 2; d <= 7; ++d) specs.push_back("hypercube:d=" + std::to_string(d));
    specs.push_back("petersen");
    for (int k : {3, 4, 5})
        for (int seed = 1; seed <= 5; ++seed)
            specs.push_back("random_regular:n=" + std::to_string(100 * seed) + ",k=" + std::to_string(k) +
                            ",seed=" + std::to_string(seed));

    std::vector<CorpusEntry> bases;
    for (const auto& text : specs) bases.push_back({to_string(parse_family_spec(text)), generate(text), EntryKind::base});

    std::vector<CorpusEntry> out = bases;
    for (const auto& b : bases)
        if (regularity(b.graph).value_or(0) >= 3) out.push_back({line_id(b.id), line_graph(b.graph), EntryKind::line});
    const std::set<std::string> doubled_bipartite = {"cycle:n=4", "hypercube:d=3"};
    for (const auto& b : bases) {
        const bool odd_cycle = b.id.starts_with("cycle:") && b.graph.order() % 2 == 1;
        const bool non_bipartite = !is_bipartite(b.graph).bipartite;
        if (odd_cycle || (non_bipartite && !b.id.starts_with("cycle:")) || doubled_bipartite.contains(b.id))
            out.push_back({double_id(b.id), bipartite_double(b.graph), EntryKind::bipartite_double});
    }
    return out;
}

// Flat "key = value" configuration; '#' comments; lists are comma separated.
// `graph` may repeat; every other key takes its last value.
struct CorpusConfig {
    bool include_default = true;
    std::vector<std::string> graphs;
    std::vector<std::string> transforms;        // "line", "double"
    std::vector<double> eps = {0.5, 1.0, 1.5, 2.0};
    std::set<std::string> checks = {"t1", "t3", "walks", "t4step", "certs"};
    std::size_t walk_s_max = 5;
    std::size_t t4_r_max = 3;
    std::size_t alpha_r_max = 2;
    std::size_t cert_l_max = 3;
    std::size_t cert_s_max = 40;
    std::size_t census_cap = default_census_cap;
    WalkCaps walk_caps{};
    bool trends = true;
    std::size_t jobs = 1;
    std::uint64_t default_seed = 0;
};

namespace detail {

inline std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

inline std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        auto comma = s.find(',', pos);
        if (comma == std::string_view::npos) comma = s.size();
        if (auto item = trim(s.substr(pos, comma - pos)); !item.empty()) out.push_back(std::move(item));
        pos = comma + 1;
    }
    return out;
}

inline std::size_t to_size(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    try {
        const auto v = std::stoull(value, &pos);
        if (pos == value.size()) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::ParseError, "config key '" + key + "' expects an integer, got '" + value + "'");
}

inline double to_real(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    try {
        const double v = std::stod(value, &pos);
        if (pos == value.size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::ParseError, "config key '" + key + "' expects a number, got '" + value + "'");
}

inline bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw Error(ErrorKind::ParseError, "config key '" + key + "' expects true/false, got '" + value + "'");
}

} // namespace detail

inline std::vector<double> parse_eps_list(std::string_view text) {
    std::vector<double> out;
    for (const auto& item : detail::split_list(text)) {
        const double eps = detail::to_real("eps", item);
        if (!(eps > 0.0 && eps <= 2.0)) throw Error(ErrorKind::DomainError, "epsilon " + item + " outside (0, 2]");
        out.push_back(eps);
    }
    return out;
}

inline CorpusConfig parse_corpus_config(std::istream& in) {
    static const std::set<std::string> known_checks = {"t1", "t3", "walks", "t4step", "certs"};
    CorpusConfig cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto text = detail::trim(line);
        if (text.empty() || text.front() == '#') continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorKind::ParseError, "config line " + std::to_string(line_no) + ": expected key = value");
        const auto key = detail::trim(std::string_view(text).substr(0, eq));
        const auto value = detail::trim(std::string_view(text).substr(eq + 1));
        if (key == "include_default") cfg.include_default = detail::to_bool(key, value);
        else if (key == "graph") cfg.graphs.push_back(value);
        else if (key == "transforms") {
            cfg.transforms = detail::split_list(value);
            for (const auto& t : cfg.transforms)
                if (t != "line" && t != "double") throw Error(ErrorKind::ParseError, "unknown transform '" + t + "'");
        } else if (key == "eps") cfg.eps = parse_eps_list(value);
        else if (key == "checks") {
            const auto items = detail::split_list(value);
            cfg.checks = {items.begin(), items.end()};
            for (const auto& c : cfg.checks)
                if (!known_checks.contains(c)) throw Error(ErrorKind::ParseError, "unknown check '" + c + "'");
        } else if (key == "walk_s_max") cfg.walk_s_max = detail::to_size(key, value);
        else if (key == "t4_r_max") cfg.t4_r_max = detail::to_size(key, value);
        else if (key == "alpha_r_max") cfg.alpha_r_max = detail::to_size(key, value);
        else if (key == "cert_l_max") cfg.cert_l_max = detail::to_size(key, value);
        else if (key == "cert_s_max") cfg.cert_s_max = detail::to_size(key, value);
        else if (key == "census_cap") cfg.census_cap = detail::to_size(key, value);
        else if (key == "walk_max_order") cfg.walk_caps.max_order = detail::to_size(key, value);
        else if (key == "walk_max_length") cfg.walk_caps.max_length = detail::to_size(key, value);
        else if (key == "trends") cfg.trends = detail::to_bool(key, value);
        else if (key == "jobs") cfg.jobs = detail::to_size(key, value);
        else if (key == "seed") cfg.default_seed = detail::to_size(key, value);
        else throw Error(ErrorKind::ParseError, "config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    if (cfg.jobs == 0 || cfg.census_cap == 0 || cfg.walk_caps.max_order == 0 || cfg.walk_caps.max_length == 0)
        throw Error(ErrorKind::ParseError, "caps and jobs must be positive");
    return cfg;
}

inline CorpusConfig read_corpus_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
    return parse_corpus_config(in);
}

struct GraphSummary {
    std::string id;
    EntryKind kind = EntryKind::base;
    std::size_t n = 0;
    std::size_t edges = 0;
    std::optional<std::size_t> k;
    CycleLength girth;
    CycleLength oddgirth;
    bool bipartite = false;
    std::size_t components = 0;
    bool moments_ok = false;
};

struct ErrorRow {
    std::string graph_id;
    std::string stage;
    std::string message;
};

struct CorpusResult {
    std::vector<GraphSummary> graphs;
    std::vector<VerificationReport> reports;   // sorted by key()
    std::vector<ErrorRow> errors;
    std::vector<DiagnosticRow> trends;
};

// Per-graph checks selected by the config. The spectrum is computed once.
inline std::vector<VerificationReport> run_graph_checks(const CorpusEntry& entry, const CorpusConfig& cfg,
                                                        GraphSummary& summary, std::vector<ErrorRow>& errors) {
    const Graph& g = entry.graph;
    summary.id = entry.id;
    summary.kind = entry.kind;
    summary.n = g.order();
    summary.edges = g.edge_count();
    summary.k = regularity(g);
    summary.girth = girth(g);
    summary.oddgirth = oddgirth(g);
    summary.bipartite = is_bipartite(g).bipartite;
    summary.components = connected_components(g).count;

    std::vector<VerificationReport> out;
    const auto spec = spectrum(g);
    summary.moments_ok = moment_check(spec, g).pass;
    if (!summary.k || *summary.k < 2) {
        errors.push_back({entry.id, "regularity", "not k-regular with k >= 2; theorem checks skipped"});
        return out;
    }
    const std::size_t k = *summary.k;

    auto guarded = [&](const std::string& stage, auto&& body) {
        try {
            body();
        } catch (const Error& e) {
            errors.push_back({entry.id, stage, e.what()});
        }
    };

    for (double eps : cfg.eps) {
        if (cfg.checks.contains("t1")) guarded("t1", [&] { out.push_back(verify_theorem1(g, eps, spec, entry.id)); });
        if (cfg.checks.contains("t3")) guarded("t3", [&] { out.push_back(verify_theorem3(g, eps, spec, entry.id)); });
    }

    if (cfg.checks.contains("walks"))
        for (std::size_t s = 1; s <= cfg.walk_s_max; ++s)
            guarded("walks", [&] {
                const auto tb = check_trace_bound(g, static_cast<unsigned>(s), cfg.walk_caps, &spec);
                VerificationReport r;
                r.graph_id = entry.id;
                r.theorem = Theorem::walk_bound;
                r.k = k;
                r.n = g.order();
                r.params["s"] = static_cast<double>(s);
                r.margins["tree"] = tb.tree_margin;
                r.margins["aggregate"] = tb.aggregate_margin;
                r.margins["binomial"] = tb.binomial_margin;
                if (tb.per_vertex_ok) r.margins["per_vertex"] = tb.per_vertex_margin;
                r.witnesses = to_json(tb);
                r.verdict = verdict_from_margins(r.margins);
                out.push_back(std::move(r));
            });

    if (cfg.checks.contains("t4step")) {
        for (std::size_t r4 = 1; r4 <= cfg.t4_r_max; ++r4)
            guarded("t4step", [&] {
                const auto ot = verify_odd_trace_vanishing(g, r4, cfg.walk_caps);
                VerificationReport r;
                r.graph_id = entry.id;
                r.theorem = Theorem::T4_step;
                r.k = k;
                r.n = g.order();
                r.params["r"] = static_cast<double>(r4);
                r.margins["survivor_diagonals_zero"] = ot.diagonal_zero ? 1.0 : -static_cast<double>(ot.nonzero_on_survivors);
                const double bound = std::pow(static_cast<double>(k), static_cast<double>(2 * r4 + 1));
                r.margins["theta_relative_slack"] = ot.theta_ok ? std::max(1.0 - ot.theta / bound, 1e-300) : -1.0;
                r.witnesses = to_json(ot);
                r.verdict = verdict_from_margins(r.margins);
                out.push_back(std::move(r));
            });
        for (std::size_t ra = 1; ra <= cfg.alpha_r_max; ++ra)
            guarded("alpha", [&] {
                const auto al = verify_alpha_inequality(g, ra, cfg.census_cap);
                VerificationReport r;
                r.graph_id = entry.id;
                r.theorem = Theorem::T4_step;
                r.k = k;
                r.n = g.order();
                r.params["alpha_r"] = static_cast<double>(ra);
                // Integer inequality lhs <= rhs, recorded as rhs - lhs + 1 > 0.
                r.margins["extended_rhs_minus_lhs_plus_1"] =
                    to_double(BigInt(al.rhs_extended) - BigInt(al.lhs) + 1);
                r.witnesses = to_json(al);
                r.witnesses["literal_form_finding"] = al.literal_pass ? "holds" : "violated";
                r.verdict = verdict_from_margins(r.margins);
                out.push_back(std::move(r));
            });
    }

    if (cfg.checks.contains("certs") && g.order() > 1)
        guarded("certs", [&] { out.push_back(certificate_report(g, spec, cfg.cert_l_max, cfg.cert_s_max, entry.id)); });
    return out;
}

// Ladders for the trend tables: cycles, random cubic graphs, bipartite doubles.
inline std::vector<std::pair<std::string, std::vector<LadderEntry>>> default_ladders() {
    std::vector<std::pair<std::string, std::vector<LadderEntry>>> out;
    std::vector<LadderEntry> cycles, cubic, doubles;
    for (std::size_t n : {11, 101, 1001}) cycles.push_back({"cycle:n=" + std::to_string(n), cycle_graph(n)});
    for (std::size_t n : {50, 100, 200, 400}) {
        const auto id = "random_regular:n=" + std::to_string(n) + ",k=3,seed=1";
        cubic.push_back({id, random_regular(n, 3, 1)});
        doubles.push_back({double_id(id), bipartite_double(cubic.back().graph)});
    }
    out.emplace_back("cycles", std::move(cycles));
    out.emplace_back("random_cubic", std::move(cubic));
    out.emplace_back("bipartite_doubles", std::move(doubles));
    return out;
}

inline CorpusResult run_corpus(const CorpusConfig& cfg) {
    CorpusResult result;
    std::vector<CorpusEntry> entries;
    if (cfg.include_default) entries = default_corpus();
    for (const auto& text : cfg.graphs) {
        try {
            const auto spec = parse_family_spec(text, cfg.default_seed);
            CorpusEntry base{to_string(spec), generate(spec), EntryKind::base};
            for (const auto& t : cfg.transforms) {
                if (t == "line" && regularity(base.graph).value_or(0) >= 3)
                    entries.push_back({line_id(base.id), line_graph(base.graph), EntryKind::line});
                if (t == "double") entries.push_back({double_id(base.id), bipartite_double(base.graph), EntryKind::bipartite_double});
            }
            entries.push_back(std::move(base));
        } catch (const Error& e) {
            result.errors.push_back({text, "generate", e.what()});
        }
    }

    std::vector<std::vector<VerificationReport>> per_entry(entries.size());
    std::vector<std::vector<ErrorRow>> per_entry_errors(entries.size());
    result.graphs.resize(entries.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < entries.size(); i = next++) {
            try {
                per_entry[i] = run_graph_checks(entries[i], cfg, result.graphs[i], per_entry_errors[i]);
            } catch (const std::exception& e) {
                per_entry_errors[i].push_back({entries[i].id, "checks", e.what()});
            }
        }
    };
    const std::size_t width = std::max<std::size_t>(1, std::min(cfg.jobs, entries.size()));
    if (width == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < width; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (std::size_t i = 0; i < entries.size(); ++i) {
        for (auto& r : per_entry[i]) result.reports.push_back(std::move(r));
        for (auto& e : per_entry_errors[i]) result.errors.push_back(std::move(e));
    }
    std::sort(result.reports.begin(), result.reports.end(),
              [](const auto& a, const auto& b) { return a.key() < b.key(); });
    std::sort(result.graphs.begin(), result.graphs.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    std::sort(result.errors.begin(), result.errors.end(), [](const auto& a, const auto& b) {
        return std::tie(a.graph_id, a.stage, a.message) < std::tie(b.graph_id, b.stage, b.message);
    });

    if (cfg.trends)
        for (const auto& [name, ladder] : default_ladders())
            for (auto& row : sequence_diagnostics(ladder, 1.0, 2, {3, 5}, cfg.census_cap)) result.trends.push_back(std::move(row));
    return result;
}

// --- output files -----------------------------------------------------------

inline std::string format_real(double x) {
    std::ostringstream out;
    out.precision(12);
    out << x;
    return out.str();
}

inline std::string kind_name(EntryKind k) {
    switch (k) {
    case EntryKind::base: return "base";
    case EntryKind::line: return "line";
    case EntryKind::bipartite_double: return "double";
    }
    return "?";
}

struct PassCount {
    std::size_t pass = 0, fail = 0, hypothesis_not_met = 0;
};

// (theorem, epsilon-or-"-") -> verdict tally
inline std::map<std::pair<std::string, std::string>, PassCount> pass_counts(const CorpusResult& result) {
    std::map<std::pair<std::string, std::string>, PassCount> out;
    for (const auto& r : result.reports) {
        auto& c = out[{std::string(to_string(r.theorem)), r.epsilon ? format_real(*r.epsilon) : "-"}];
        if (r.verdict == Verdict::pass) ++c.pass;
        else if (r.verdict == Verdict::fail) ++c.fail;
        else ++c.hypothesis_not_met;
    }
    return out;
}

inline void write_corpus_outputs(const CorpusResult& result, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    auto open = [&](const char* name) {
        std::ofstream out(dir / name, std::ios::binary);
        if (!out) throw Error(ErrorKind::IoError, "cannot write " + (dir / name).string());
        return out;
    };

    {
        auto out = open("reports.jsonl");
        for (const auto& r : result.reports) out << to_json(r).dump() << '\n';
    }
    {
        auto out = open("summary.csv");
        out << "graph_id,theorem,epsilon,params,k,n,m,cn,verdict\n";
        for (const auto& r : result.reports) {
            std::string params;
            for (const auto& [name, v] : r.params) params += (params.empty() ? "" : ";") + name + "=" + format_real(v);
            out << '"' << r.graph_id << "\"," << to_string(r.theorem) << ',' << (r.epsilon ? format_real(*r.epsilon) : "")
                << ',' << params << ',' << r.k << ',' << r.n << ',' << r.m << ',' << format_real(r.cn) << ','
                << to_string(r.verdict) << '\n';
        }
    }
    {
        auto out = open("pass_counts.csv");
        out << "theorem,epsilon,pass,fail,hypothesis_not_met\n";
        for (const auto& [key, c] : pass_counts(result))
            out << key.first << ',' << key.second << ',' << c.pass << ',' << c.fail << ',' << c.hypothesis_not_met << '\n';
    }
    {
        auto out = open("graphs.csv");
        out << "graph_id,kind,n,edges,k,girth,oddgirth,bipartite,components,moments_ok\n";
        for (const auto& g : result.graphs)
            out << '"' << g.id << "\"," << kind_name(g.kind) << ',' << g.n << ',' << g.edges << ','
                << (g.k ? std::to_string(*g.k) : "") << ',' << to_string(g.girth) << ',' << to_string(g.oddgirth) << ','
                << g.bipartite << ',' << g.components << ',' << g.moments_ok << '\n';
    }
    {
        auto out = open("errors.csv");
        out << "graph_id,stage,message\n";
        for (const auto& e : result.errors) out << '"' << e.graph_id << "\"," << e.stage << ",\"" << e.message << "\"\n";
    }
    {
        auto out = open("trends.csv");
        out << "graph_id,n,k,lambda_2,mu_2,oddgirth,c3_per_n,c5_per_n,t1_fraction,t3_fraction,lambda_certificate,mu_certificate\n";
        for (const auto& row : result.trends) {
            auto density = [&](std::size_t len) {
                const auto it = row.odd_cycle_density.find(len);
                return it == row.odd_cycle_density.end() ? std::string() : format_real(it->second);
            };
            out << '"' << row.graph_id << "\"," << row.n << ',' << row.k << ',' << format_real(row.lambda_l) << ','
                << format_real(row.mu_l) << ',' << to_string(row.oddgirth) << ',' << density(3) << ',' << density(5) << ','
                << format_real(row.t1_fraction) << ',' << format_real(row.t3_fraction) << ','
                << format_real(row.lambda_certificate) << ',' << format_real(row.mu_certificate) << '\n';
        }
    }
}

} // namespace regspec
