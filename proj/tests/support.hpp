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

// Shared fixtures and brute-force oracles for the test binaries.

#ifndef HAMPOW_TESTS_SUPPORT_HPP
#define HAMPOW_TESTS_SUPPORT_HPP

#include <hampow/embed/reservoir.hpp>
#include <hampow/graph/graph.hpp>
#include <hampow/pseudo/connectedness.hpp>
#include <hampow/rng.hpp>

#include <limits>
#include <optional>
#include <set>
#include <vector>

namespace hampow::testing {

/// A random k-clique found by greedy random extension, or empty after `tries`.
inline auto random_clique(const Graph & g, int k, Rng & rng, const VertexSet & allowed, int tries = 200) -> VertexTuple
{
    for (int t = 0 ; t < tries ; ++t) {
        VertexTuple c;
        VertexSet cand = allowed;
        while (static_cast<int>(c.size()) < k && ! cand.empty()) {
            auto pool = cand.to_vector();
            Vertex v = pool[static_cast<std::size_t>(rng.below(pool.size()))];
            c.push_back(v);
            cand &= g.neighbours(v);
        }
        if (static_cast<int>(c.size()) == k)
            return c;
    }
    return {};
}

inline auto random_subset(const VertexSet & pool, int size, Rng & rng) -> VertexSet
{
    auto v = pool.to_vector();
    shuffle(v, rng);
    VertexSet s(pool.universe());
    for (int i = 0 ; i < size && i < static_cast<int>(v.size()) ; ++i)
        s.set(v[static_cast<std::size_t>(i)]);
    return s;
}

struct Scaffold
{
    VertexTuple x;
    std::vector<VertexSet> sets;
};

/// x a random k-clique, U_i (i <= k) inside N(x_i..x_k), U_{k+1..2k} arbitrary; all disjoint.
inline auto random_scaffold(const Graph & g, int k, int small, int large, Rng & rng) -> Scaffold
{
    Scaffold s;
    s.x = random_clique(g, k, rng, g.all_vertices());
    VertexSet avail = g.all_vertices() - VertexSet::from(g.order(), s.x);
    for (int i = 1 ; i <= 2 * k ; ++i) {
        VertexSet pool = avail;
        if (i <= k)
            pool = common_neighbourhood(g, std::span<const Vertex>(s.x).subspan(static_cast<std::size_t>(i - 1)), avail);
        auto part = random_subset(pool, i <= k ? small : large, rng);
        avail -= part;
        s.sets.push_back(part);
    }
    return s;
}

/// Final windows of every k-path x, s_1..s_m with s_j in S_j, by plain enumeration.
inline auto brute_force_windows(const Graph & g, const VertexTuple & x, const std::vector<VertexSet> & sets, int k)
    -> std::set<VertexTuple>
{
    std::set<VertexTuple> result;
    std::vector<Vertex> seq(x.begin(), x.end());
    auto rec = [&] (auto && self, std::size_t level) -> void {
        if (level == sets.size()) {
            if (verify_kpower(g, seq, k, false))
                result.insert(VertexTuple(seq.end() - k, seq.end()));
            return;
        }
        sets[level].for_each([&] (Vertex v) {
            seq.push_back(v);
            // Prune on the new vertex only so that the final check stays the full verifier.
            bool ok = true;
            for (int d = 1 ; d <= k && d < static_cast<int>(seq.size()) ; ++d)
                ok = ok && g.adjacent(v, seq[seq.size() - 1 - static_cast<std::size_t>(d)]);
            if (ok)
                self(self, level + 1);
            seq.pop_back();
        });
    };
    rec(rec, 0);
    return result;
}

/// Two disjoint random edges (as outward pairs) both (rho,p)-connected to the rest of the graph.
inline auto random_connected_pairs(const Graph & g, double rho, double p, Rng & rng, int tries = 1000)
    -> std::optional<std::pair<VertexTuple, VertexTuple>>
{
    for (int t = 0 ; t < tries ; ++t) {
        auto x = random_clique(g, 2, rng, g.all_vertices());
        if (x.empty())
            continue;
        auto y = random_clique(g, 2, rng, g.all_vertices() - VertexSet::from(g.order(), x));
        if (y.empty())
            continue;
        VertexSet u = g.all_vertices() - VertexSet::from(g.order(), x) - VertexSet::from(g.order(), y);
        if (is_connected_tuple(g, x, u, rho, p) && is_connected_tuple(g, y, u, rho, p))
            return std::pair{ x, y };
    }
    return std::nullopt;
}

/// Number of subsets W of the reservoir whose bypass is not a k-path on V(P) - W with the original end tuples.
inline auto bypass_failures(const Graph & g, const ReservoirPath & rp) -> int
{
    const auto members = rp.reservoir.to_vector();
    const int n = g.order();
    int failures = 0;
    for (unsigned mask = 0 ; mask < (1u << members.size()) ; ++mask) {
        VertexSet w(n);
        for (std::size_t i = 0 ; i < members.size() ; ++i)
            if (mask >> i & 1u)
                w.set(members[i]);
        try {
            auto out = bypass(rp, w);
            bool ok = verify_kpower(g, out.order, rp.path.k, false)
                    && out.vertex_set(n) == rp.path.vertex_set(n) - w
                    && static_cast<int>(out.size()) == static_cast<int>(rp.path.size()) - w.count()
                    && out.start_tuple() == rp.path.start_tuple() && out.end_tuple() == rp.path.end_tuple();
            failures += ! ok;
        }
        catch (const std::exception &) {
            ++failures;
        }
    }
    return failures;
}

/**
 * Labeled count of Hamilton k-cycle orderings by plain recursion over all
 * starting vertices, with the library verifier at each leaf. Stops at `limit`.
 */
inline auto reference_kpower_count(const Graph & g, int k, long long limit = std::numeric_limits<long long>::max())
    -> long long
{
    const int n = g.order();
    std::vector<Vertex> order;
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    long long count = 0;
    auto rec = [&] (auto & self) -> void {
        if (count >= limit)
            return;
        if (static_cast<int>(order.size()) == n) {
            count += verify_kpower(g, order, k, true);
            return;
        }
        for (Vertex v = 0 ; v < n ; ++v) {
            if (used[static_cast<std::size_t>(v)])
                continue;
            bool fits = true;
            for (int d = 1 ; d <= k && d <= static_cast<int>(order.size()) ; ++d)
                fits = fits && g.adjacent(order[order.size() - static_cast<std::size_t>(d)], v);
            if (! fits)
                continue;
            used[static_cast<std::size_t>(v)] = true;
            order.push_back(v);
            self(self);
            order.pop_back();
            used[static_cast<std::size_t>(v)] = false;
        }
    };
    rec(rec);
    return count;
}

}

#endif
