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

#ifndef HAMPOW_GRAPH_GRAPH_HPP
#define HAMPOW_GRAPH_GRAPH_HPP

#include <hampow/errors.hpp>
#include <hampow/graph/vertex_set.hpp>

#include <algorithm>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace hampow {

/// Ordered list of distinct vertices.
using VertexTuple = std::vector<Vertex>;

using Edge = std::pair<Vertex, Vertex>;

/**
 * Immutable simple undirected graph on vertices 0..n-1 with one bit row per
 * vertex. Safe to share between threads once built.
 */
class Graph
{
    private:
        int _n = 0;
        long long _m = 0;
        std::vector<VertexSet> _rows;
        std::vector<int> _degrees;

        Graph(int n, std::vector<VertexSet> rows) :
            _n(n),
            _rows(std::move(rows)),
            _degrees(static_cast<std::size_t>(n), 0)
        {
            long long total = 0;
            for (int v = 0 ; v < _n ; ++v) {
                _degrees[static_cast<std::size_t>(v)] = _rows[static_cast<std::size_t>(v)].count();
                total += _degrees[static_cast<std::size_t>(v)];
            }
            _m = total / 2;
        }

        friend auto build_graph(int n, std::span<const Edge> edges) -> Graph;

    public:
        Graph() = default;

        auto order() const -> int { return _n; }
        auto size() const -> long long { return _m; }

        auto neighbours(Vertex v) const -> const VertexSet & { return _rows[static_cast<std::size_t>(v)]; }
        auto degree(Vertex v) const -> int { return _degrees[static_cast<std::size_t>(v)]; }
        auto adjacent(Vertex u, Vertex v) const -> bool { return _rows[static_cast<std::size_t>(u)].contains(v); }

        auto all_vertices() const -> VertexSet { return VertexSet::full(_n); }
        auto empty_set() const -> VertexSet { return VertexSet(_n); }

        auto min_degree() const -> int
        {
            return _degrees.empty() ? 0 : *std::min_element(_degrees.begin(), _degrees.end());
        }

        auto max_degree() const -> int
        {
            return _degrees.empty() ? 0 : *std::max_element(_degrees.begin(), _degrees.end());
        }

        /// Edge density m / C(n,2); 0 for n < 2.
        auto density() const -> double
        {
            if (_n < 2)
                return 0.0;
            return static_cast<double>(_m) / (0.5 * _n * (_n - 1.0));
        }

        auto is_regular() const -> bool { return min_degree() == max_degree(); }

        /// Edges as (u,v) with u < v in ascending order.
        auto edges() const -> std::vector<Edge>
        {
            std::vector<Edge> result;
            result.reserve(static_cast<std::size_t>(_m));
            for (Vertex u = 0 ; u < _n ; ++u)
                _rows[static_cast<std::size_t>(u)].for_each([&] (Vertex v) {
                    if (u < v)
                        result.emplace_back(u, v);
                });
            return result;
        }

        /// FNV-1a over n and the adjacency words; equal graphs hash equal.
        auto hash() const -> std::uint64_t
        {
            std::uint64_t h = 1469598103934665603ULL;
            auto mix = [&] (std::uint64_t x) {
                for (int i = 0 ; i < 8 ; ++i) {
                    h ^= (x >> (8 * i)) & 0xff;
                    h *= 1099511628211ULL;
                }
            };
            mix(static_cast<std::uint64_t>(_n));
            for (const auto & row : _rows)
                for (auto w : row.words())
                    mix(w);
            return h;
        }

        friend auto operator== (const Graph & a, const Graph & b) -> bool
        {
            return a._n == b._n && a._rows == b._rows;
        }
};

/// Builds a graph from an edge list; duplicate and reversed pairs collapse.
/// Throws InvalidEdgeError naming the first loop or out-of-range pair.
inline auto build_graph(int n, std::span<const Edge> edges) -> Graph
{
    if (n < 0)
        throw PreconditionError("build_graph: negative vertex count");
    std::vector<VertexSet> rows(static_cast<std::size_t>(n), VertexSet(n));
    for (std::size_t i = 0 ; i < edges.size() ; ++i) {
        auto [u, v] = edges[i];
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw InvalidEdgeError(i, "build_graph: vertex out of range");
        if (u == v)
            throw InvalidEdgeError(i, "build_graph: loop edge");
        rows[static_cast<std::size_t>(u)].set(v);
        rows[static_cast<std::size_t>(v)].set(u);
    }
    return Graph(n, std::move(rows));
}

inline auto build_graph(int n, const std::vector<Edge> & edges) -> Graph
{
    return build_graph(n, std::span<const Edge>(edges));
}

inline auto build_graph(int n, std::initializer_list<Edge> edges) -> Graph
{
    return build_graph(n, std::span<const Edge>(edges.begin(), edges.size()));
}

/// e(A,B): number of edges with one end in A and one in B. A and B must be disjoint.
inline auto edges_between(const Graph & g, const VertexSet & a, const VertexSet & b) -> long long
{
    if (a.intersects(b))
        throw PreconditionError("edges_between: sets overlap");
    long long result = 0;
    const VertexSet & smaller = a.count() <= b.count() ? a : b;
    const VertexSet & other = a.count() <= b.count() ? b : a;
    smaller.for_each([&] (Vertex v) { result += g.neighbours(v).intersection_count(other); });
    return result;
}

/// N_X(t): vertices of X adjacent to every member of t. The empty tuple yields X.
inline auto common_neighbourhood(const Graph & g, std::span<const Vertex> t, const VertexSet & x) -> VertexSet
{
    VertexSet result = x;
    for (auto v : t)
        result &= g.neighbours(v);
    return result;
}

inline auto common_degree(const Graph & g, std::span<const Vertex> t, const VertexSet & x) -> int
{
    if (t.empty())
        return x.count();
    if (t.size() == 1)
        return g.neighbours(t[0]).intersection_count(x);
    return common_neighbourhood(g, t, x).count();
}

/// True if the tuple's vertices are distinct and pairwise adjacent.
inline auto is_clique(const Graph & g, std::span<const Vertex> t) -> bool
{
    for (std::size_t i = 0 ; i < t.size() ; ++i)
        for (std::size_t j = i + 1 ; j < t.size() ; ++j)
            if (t[i] == t[j] || ! g.adjacent(t[i], t[j]))
                return false;
    return true;
}

/**
 * Checks that `order` is a k-th power of a path (or, with `cyclic`, of a
 * cycle): vertices distinct and every pair at (cyclic) sequence distance at
 * most k adjacent. Sequences of at most k vertices pass iff they span a clique.
 */
inline auto verify_kpower(const Graph & g, std::span<const Vertex> order, int k, bool cyclic) -> bool
{
    const auto len = static_cast<long long>(order.size());
    VertexSet seen(g.order());
    for (auto v : order) {
        if (v < 0 || v >= g.order() || seen.contains(v))
            return false;
        seen.set(v);
    }
    for (long long i = 0 ; i < len ; ++i)
        for (long long d = 1 ; d <= k ; ++d) {
            long long j = i + d;
            if (j >= len) {
                if (! cyclic || d >= len)
                    break;
                j -= len;
            }
            if (! g.adjacent(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]))
                return false;
        }
    return true;
}

/// A Hamilton k-cycle: a cyclic k-power covering every vertex.
inline auto is_hamilton_kcycle(const Graph & g, std::span<const Vertex> order, int k) -> bool
{
    return static_cast<int>(order.size()) == g.order() && verify_kpower(g, order, k, true);
}

/**
 * An ordered vertex sequence claimed to be a k-path. The start tuple is the
 * first k vertices reversed (pointing outwards), the end tuple the last k.
 */
struct KPath
{
    std::vector<Vertex> order;
    int k = 0;

    auto size() const -> std::size_t { return order.size(); }

    auto start_tuple() const -> VertexTuple
    {
        auto s = std::min<std::size_t>(static_cast<std::size_t>(k), order.size());
        return VertexTuple(order.rend() - static_cast<std::ptrdiff_t>(s), order.rend());
    }

    auto end_tuple() const -> VertexTuple
    {
        auto s = std::min<std::size_t>(static_cast<std::size_t>(k), order.size());
        return VertexTuple(order.end() - static_cast<std::ptrdiff_t>(s), order.end());
    }

    auto vertex_set(int n) const -> VertexSet { return VertexSet::from(n, order); }

    auto valid_in(const Graph & g) const -> bool { return verify_kpower(g, order, k, false); }
};

}

#endif
