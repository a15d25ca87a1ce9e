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

#ifndef HAMPOW_GEN_GENERATORS_HPP
#define HAMPOW_GEN_GENERATORS_HPP

#include <hampow/errors.hpp>
#include <hampow/graph/graph.hpp>
#include <hampow/rng.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace hampow {

/// G(n,p): pairs (i,j), i<j, visited row-major; edge iff rng.uniform() < p.
inline auto gnp(int n, double p, std::uint64_t seed) -> Graph
{
    if (! (p >= 0.0 && p <= 1.0))
        throw PreconditionError("gnp: p must lie in [0,1]");
    Rng rng(seed);
    std::vector<Edge> edges;
    for (int i = 0 ; i < n ; ++i)
        for (int j = i + 1 ; j < n ; ++j)
            if (rng.uniform() < p)
                edges.emplace_back(i, j);
    return build_graph(n, edges);
}

inline auto complete_graph(int n) -> Graph
{
    std::vector<Edge> edges;
    for (int i = 0 ; i < n ; ++i)
        for (int j = i + 1 ; j < n ; ++j)
            edges.emplace_back(i, j);
    return build_graph(n, edges);
}

inline auto empty_graph(int n) -> Graph
{
    return build_graph(n, std::vector<Edge>{});
}

inline auto is_prime(long long q) -> bool
{
    if (q < 2)
        return false;
    for (long long d = 2 ; d * d <= q ; ++d)
        if (q % d == 0)
            return false;
    return true;
}

/// Nonzero squares modulo the prime q, ascending.
inline auto quadratic_residues(int q) -> std::vector<int>
{
    std::vector<bool> is_square(static_cast<std::size_t>(q), false);
    for (long long y = 1 ; y < q ; ++y)
        is_square[static_cast<std::size_t>(y * y % q)] = true;
    std::vector<int> result;
    for (int x = 1 ; x < q ; ++x)
        if (is_square[static_cast<std::size_t>(x)])
            result.push_back(x);
    return result;
}

/// Paley graph on F_q for prime q = 1 mod 4.
inline auto paley(int q) -> Graph
{
    if (! is_prime(q))
        throw PreconditionError("paley: q must be prime (prime powers are not supported)");
    if (q % 4 != 1)
        throw PreconditionError("paley: q must be 1 mod 4");
    std::vector<bool> residue(static_cast<std::size_t>(q), false);
    for (int x : quadratic_residues(q))
        residue[static_cast<std::size_t>(x)] = true;
    std::vector<Edge> edges;
    for (int x = 0 ; x < q ; ++x)
        for (int y = x + 1 ; y < q ; ++y)
            if (residue[static_cast<std::size_t>(y - x)])
                edges.emplace_back(x, y);
    return build_graph(q, edges);
}

/// C_n^k, requiring n >= 2k+2.
inline auto cycle_power(int n, int k) -> Graph
{
    if (k < 1)
        throw PreconditionError("cycle_power: k must be positive");
    if (n < 2 * k + 2)
        throw PreconditionError("cycle_power: need n >= 2k+2, got n=" + std::to_string(n) + " k=" + std::to_string(k));
    std::vector<Edge> edges;
    for (int i = 0 ; i < n ; ++i)
        for (int d = 1 ; d <= k ; ++d)
            edges.emplace_back(i, (i + d) % n);
    return build_graph(n, edges);
}

/// Plain cycle C_n, n >= 3.
inline auto cycle_graph(int n) -> Graph
{
    if (n < 3)
        throw PreconditionError("cycle_graph: need n >= 3");
    std::vector<Edge> edges;
    for (int i = 0 ; i < n ; ++i)
        edges.emplace_back(i, (i + 1) % n);
    return build_graph(n, edges);
}

inline auto complete_bipartite(int a, int b) -> Graph
{
    std::vector<Edge> edges;
    for (int i = 0 ; i < a ; ++i)
        for (int j = 0 ; j < b ; ++j)
            edges.emplace_back(i, a + j);
    return build_graph(a + b, edges);
}

/// Disjoint union of `copies` cliques of the given size.
inline auto disjoint_cliques(int copies, int size) -> Graph
{
    std::vector<Edge> edges;
    for (int c = 0 ; c < copies ; ++c)
        for (int i = 0 ; i < size ; ++i)
            for (int j = i + 1 ; j < size ; ++j)
                edges.emplace_back(c * size + i, c * size + j);
    return build_graph(copies * size, edges);
}

inline auto complement(const Graph & g) -> Graph
{
    std::vector<Edge> edges;
    for (int i = 0 ; i < g.order() ; ++i)
        for (int j = i + 1 ; j < g.order() ; ++j)
            if (! g.adjacent(i, j))
                edges.emplace_back(i, j);
    return build_graph(g.order(), edges);
}

/// Applies a vertex relabelling: vertex v of g becomes perm[v].
inline auto relabel(const Graph & g, const std::vector<Vertex> & perm) -> Graph
{
    std::vector<Edge> edges;
    for (auto [u, v] : g.edges())
        edges.emplace_back(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
    return build_graph(g.order(), edges);
}

/**
 * Random d-regular graph by sequential pairing (pick two random unmatched
 * points, pair them if that keeps the graph simple), restarting when stuck.
 * Degrees above (n-1)/2 go through the complement. Requires n*d even, d < n.
 */
inline auto random_regular(int n, int d, std::uint64_t seed, int max_attempts = 1000) -> Graph;

namespace detail {
    inline auto sequential_pairing(int n, int d, Rng & rng, int max_attempts) -> Graph
    {
        for (int attempt = 0 ; attempt < max_attempts ; ++attempt) {
            std::vector<Vertex> points;
            for (int v = 0 ; v < n ; ++v)
                for (int i = 0 ; i < d ; ++i)
                    points.push_back(v);
            std::vector<VertexSet> seen(static_cast<std::size_t>(n), VertexSet(n));
            std::vector<Edge> edges;
            bool stuck = false;
            while (! points.empty() && ! stuck) {
                stuck = true;
                for (int tries = 0 ; tries < 64 * d + 64 ; ++tries) {
                    auto i = static_cast<std::size_t>(rng.below(points.size()));
                    auto j = static_cast<std::size_t>(rng.below(points.size()));
                    auto u = points[i], v = points[j];
                    if (i == j || u == v || seen[static_cast<std::size_t>(u)].contains(v))
                        continue;
                    seen[static_cast<std::size_t>(u)].set(v);
                    seen[static_cast<std::size_t>(v)].set(u);
                    edges.emplace_back(u, v);
                    if (i < j)
                        std::swap(i, j);
                    std::swap(points[i], points.back());
                    points.pop_back();
                    std::swap(points[j], points.back());
                    points.pop_back();
                    stuck = false;
                    break;
                }
            }
            if (! stuck)
                return build_graph(n, edges);
        }
        throw PreconditionError("random_regular: pairing did not produce a simple graph");
    }
}

inline auto random_regular(int n, int d, std::uint64_t seed, int max_attempts) -> Graph
{
    if (d < 0 || d >= n || (static_cast<long long>(n) * d) % 2 != 0)
        throw PreconditionError("random_regular: need 0 <= d < n and n*d even");
    Rng rng(seed);
    if (2 * d > n - 1)
        return complement(detail::sequential_pairing(n, n - 1 - d, rng, max_attempts));
    return detail::sequential_pairing(n, d, rng, max_attempts);
}

/**
 * Sum graph on a multiplicative subgroup A of F_q^*: vertices are the
 * elements of A in the given order, x ~ y iff x + y mod q lies in A.
 * Rejects lists that are not closed under multiplication.
 */
inline auto subgroup_sum_graph(int q, const std::vector<int> & subgroup) -> Graph
{
    if (! is_prime(q))
        throw PreconditionError("subgroup_sum_graph: q must be prime");
    std::vector<bool> member(static_cast<std::size_t>(q), false);
    for (int a : subgroup) {
        if (a <= 0 || a >= q)
            throw PreconditionError("subgroup_sum_graph: element " + std::to_string(a) + " outside F_q^*");
        if (member[static_cast<std::size_t>(a)])
            throw PreconditionError("subgroup_sum_graph: repeated element " + std::to_string(a));
        member[static_cast<std::size_t>(a)] = true;
    }
    for (int a : subgroup)
        for (int b : subgroup) {
            auto c = static_cast<int>(static_cast<long long>(a) * b % q);
            if (! member[static_cast<std::size_t>(c)])
                throw PreconditionError("subgroup_sum_graph: not closed, " + std::to_string(a) + "*"
                        + std::to_string(b) + "=" + std::to_string(c) + " mod " + std::to_string(q) + " is missing");
        }
    std::vector<Edge> edges;
    auto d = static_cast<int>(subgroup.size());
    for (int i = 0 ; i < d ; ++i)
        for (int j = i + 1 ; j < d ; ++j)
            if (member[static_cast<std::size_t>((subgroup[static_cast<std::size_t>(i)] + subgroup[static_cast<std::size_t>(j)]) % q)])
                edges.emplace_back(i, j);
    return build_graph(d, edges);
}

/// Powers of g modulo q: the cyclic subgroup generated by g.
inline auto generated_subgroup(int q, int g) -> std::vector<int>
{
    if (! is_prime(q))
        throw PreconditionError("generated_subgroup: q must be prime");
    if (g % q == 0)
        throw PreconditionError("generated_subgroup: generator must be nonzero mod q");
    std::vector<int> result;
    long long x = 1;
    do {
        result.push_back(static_cast<int>(x));
        x = x * (((g % q) + q) % q) % q;
    } while (x != 1);
    return result;
}

}

#endif
