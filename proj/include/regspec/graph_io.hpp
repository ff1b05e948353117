#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "regspec/graph.hpp"

namespace regspec {

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

inline std::size_t parse_index(std::string_view token, std::size_t line_no) {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size())
        throw Error(ErrorKind::ParseError,
                    "line " + std::to_string(line_no) + ": expected a decimal integer, got '" + std::string(token) + "'");
    return value;
}

} // namespace detail

// Edge-list text: "n m" header, then m lines "u v"; '#' starts a comment line.
inline Graph parse_graph(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::size_t n = 0, m = 0;
    std::vector<Edge> edges;
    while (std::getline(in, line)) {
        ++line_no;
        const auto tokens = detail::split_ws(line);
        if (tokens.empty() || tokens.front().front() == '#') continue;
        if (tokens.size() != 2)
            throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected two integers");
        const std::size_t a = detail::parse_index(tokens[0], line_no);
        const std::size_t b = detail::parse_index(tokens[1], line_no);
        if (!have_header) {
            n = a;
            m = b;
            have_header = true;
            edges.reserve(m);
            continue;
        }
        if (a >= n || b >= n)
            throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": index out of range for n = " +
                                                   std::to_string(n));
        if (a == b) throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": self-loop");
        if (edges.size() == m)
            throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": more than " +
                                                   std::to_string(m) + " edge lines");
        edges.emplace_back(a, b);
    }
    if (!have_header) throw Error(ErrorKind::ParseError, "missing 'n m' header");
    if (edges.size() != m)
        throw Error(ErrorKind::ParseError, "header declares " + std::to_string(m) + " edges, found " +
                                               std::to_string(edges.size()));
    return from_edge_list(n, edges);
}

inline void format_graph(const Graph& g, std::ostream& out) {
    out << g.order() << ' ' << g.edge_count() << '\n';
    for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

inline std::string format_graph(const Graph& g) {
    std::ostringstream out;
    format_graph(g, out);
    return out.str();
}

inline Graph read_graph(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
    try {
        return parse_graph(in);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ParseError) throw Error(ErrorKind::ParseError, path.string() + ": " + e.what());
        throw;
    }
}

inline void write_graph(const Graph& g, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::IoError, "cannot open " + path.string() + " for writing");
    format_graph(g, out);
    if (!out) throw Error(ErrorKind::IoError, "write failed for " + path.string());
}

} // namespace regspec
