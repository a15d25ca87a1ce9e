// Copyright 2026 The hampow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef HAMPOW_IO_FILES_HPP
#define HAMPOW_IO_FILES_HPP

#include <hampow/graph/graph.hpp>

#include <zlib.h>

#include <cstdio>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hampow {

/// A file could not be opened, read or parsed; `line` is 1-based, 0 when not tied to a line.
class FileError : public std::runtime_error
{
    private:
        int _line;

    public:
        FileError(const std::string & path, int line, const std::string & what) :
            std::runtime_error(path + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + what),
            _line(line)
        {
        }

        auto line() const -> int { return _line; }
};

namespace detail {

    inline auto is_gzip(const std::string & path) -> bool
    {
        std::ifstream in(path, std::ios::binary);
        unsigned char magic[2] = { 0, 0 };
        in.read(reinterpret_cast<char *>(magic), 2);
        return in.gcount() == 2 && magic[0] == 0x1f && magic[1] == 0x8b;
    }

    inline auto read_lines(const std::string & path) -> std::vector<std::string>
    {
        std::vector<std::string> lines;
        if (is_gzip(path)) {
            std::unique_ptr<gzFile_s, decltype(&gzclose)> f(gzopen(path.c_str(), "rb"), &gzclose);
            if (! f)
                throw FileError(path, 0, "cannot open");
            std::string current;
            char buf[8192];
            int got;
            while ((got = gzread(f.get(), buf, sizeof buf)) > 0)
                for (int i = 0 ; i < got ; ++i) {
                    if (buf[i] == '\n') {
                        lines.push_back(std::move(current));
                        current.clear();
                    }
                    else
                        current.push_back(buf[i]);
                }
            if (got < 0)
                throw FileError(path, 0, "corrupt gzip stream");
            if (! current.empty())
                lines.push_back(std::move(current));
            return lines;
        }
        std::ifstream in(path);
        if (! in)
            throw FileError(path, 0, "cannot open");
        for (std::string line ; std::getline(in, line) ; )
            lines.push_back(line);
        return lines;
    }

    inline auto write_text(const std::string & path, const std::string & text) -> void
    {
        if (path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0) {
            std::unique_ptr<gzFile_s, decltype(&gzclose)> f(gzopen(path.c_str(), "wb"), &gzclose);
            if (! f || gzwrite(f.get(), text.data(), static_cast<unsigned>(text.size())) != static_cast<int>(text.size()))
                throw FileError(path, 0, "cannot write");
            return;
        }
        std::ofstream out(path);
        if (! out)
            throw FileError(path, 0, "cannot write");
        out << text;
        if (! out)
            throw FileError(path, 0, "cannot write");
    }

    inline auto blank(const std::string & line) -> bool
    {
        return line.find_first_not_of(" \t\r") == std::string::npos;
    }

    // Exactly `count` integers on the line, nothing else.
    inline auto parse_ints(const std::string & path, int lineno, const std::string & line, int count) -> std::vector<long long>
    {
        std::istringstream in(line);
        std::vector<long long> values;
        long long x;
        while (in >> x)
            values.push_back(x);
        in.clear();
        std::string rest;
        if (in >> rest || static_cast<int>(values.size()) != count)
            throw FileError(path, lineno, "expected " + std::to_string(count) + " integer(s), got \"" + line + "\"");
        return values;
    }

}

/**
 * Reads the edge-list format: a header "n m", then m lines "u v" with
 * 0-indexed endpoints. Gzip input is detected by its magic bytes. Blank
 * lines are skipped; loops, repeats, out-of-range ids and a wrong edge
 * count are errors naming the line.
 */
inline auto read_edge_list(const std::string & path) -> Graph
{
    auto lines = detail::read_lines(path);
    std::size_t i = 0;
    while (i < lines.size() && detail::blank(lines[i]))
        ++i;
    if (i == lines.size())
        throw FileError(path, 0, "missing header \"n m\"");
    auto header = detail::parse_ints(path, static_cast<int>(i + 1), lines[i], 2);
    const long long n = header[0];
    const long long m = header[1];
    if (n < 0 || m < 0 || m > n * (n - 1) / 2)
        throw FileError(path, static_cast<int>(i + 1), "bad header counts");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    std::vector<VertexSet> seen(static_cast<std::size_t>(n), VertexSet(static_cast<int>(n)));
    for (++i ; i < lines.size() ; ++i) {
        if (detail::blank(lines[i]))
            continue;
        const int lineno = static_cast<int>(i + 1);
        auto uv = detail::parse_ints(path, lineno, lines[i], 2);
        const long long u = uv[0];
        const long long v = uv[1];
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw FileError(path, lineno, "vertex id out of range");
        if (u == v)
            throw FileError(path, lineno, "loop at vertex " + std::to_string(u));
        if (seen[static_cast<std::size_t>(u)].contains(static_cast<Vertex>(v)))
            throw FileError(path, lineno, "repeated edge " + std::to_string(u) + " " + std::to_string(v));
        seen[static_cast<std::size_t>(u)].set(static_cast<Vertex>(v));
        seen[static_cast<std::size_t>(v)].set(static_cast<Vertex>(u));
        edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    if (static_cast<long long>(edges.size()) != m)
        throw FileError(path, static_cast<int>(lines.size()), "header promises " + std::to_string(m) + " edges, found "
                + std::to_string(edges.size()));
    return build_graph(static_cast<int>(n), edges);
}

/// Edge-list text: "n m", then every edge u < v in ascending order.
inline auto edge_list_text(const Graph & g) -> std::string
{
    std::string s = std::to_string(g.order()) + " " + std::to_string(g.size()) + "\n";
    for (auto [u, v] : g.edges())
        s += std::to_string(u) + " " + std::to_string(v) + "\n";
    return s;
}

/// Writes the edge list; a ".gz" suffix selects gzip output.
inline auto write_edge_list(const std::string & path, const Graph & g) -> void
{
    detail::write_text(path, edge_list_text(g));
}

/// One vertex id per line; blank lines skipped.
inline auto read_cycle(const std::string & path) -> std::vector<Vertex>
{
    auto lines = detail::read_lines(path);
    std::vector<Vertex> order;
    for (std::size_t i = 0 ; i < lines.size() ; ++i) {
        if (detail::blank(lines[i]))
            continue;
        auto v = detail::parse_ints(path, static_cast<int>(i + 1), lines[i], 1);
        if (v[0] < 0 || v[0] > std::numeric_limits<Vertex>::max())
            throw FileError(path, static_cast<int>(i + 1), "vertex id out of range");
        order.push_back(static_cast<Vertex>(v[0]));
    }
    return order;
}

inline auto cycle_text(const std::vector<Vertex> & order) -> std::string
{
    std::string s;
    for (Vertex v : order)
        s += std::to_string(v) + "\n";
    return s;
}

inline auto write_cycle(const std::string & path, const std::vector<Vertex> & order) -> void
{
    detail::write_text(path, cycle_text(order));
}

}

#endif
