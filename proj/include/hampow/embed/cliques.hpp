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

#ifndef HAMPOW_EMBED_CLIQUES_HPP
#define HAMPOW_EMBED_CLIQUES_HPP

#include <hampow/errors.hpp>
#include <hampow/graph/graph.hpp>

#include <cmath>
#include <map>
#include <span>
#include <vector>

namespace hampow {

namespace detail {

inline auto require_disjoint(std::span<const VertexSet> parts, const char * who) -> void
{
    for (std::size_t i = 0 ; i < parts.size() ; ++i)
        for (std::size_t j = i + 1 ; j < parts.size() ; ++j)
            if (parts[i].intersects(parts[j]))
                throw PreconditionError(std::string(who) + ": parts " + std::to_string(i) + " and "
                        + std::to_string(j) + " overlap");
}

}

/// |K_r(V_1..V_r)|: cliques with exactly one vertex in each part. Parts must be pairwise disjoint.
inline auto count_crossing_cliques(const Graph & g, std::span<const VertexSet> parts) -> long long
{
    detail::require_disjoint(parts, "count_crossing_cliques");
    if (parts.empty())
        return 0;
    long long total = 0;
    // Depth-first over parts with the running common neighbourhood of the chosen prefix.
    auto rec = [&] (auto && self, std::size_t level, const VertexSet & common) -> void {
        VertexSet candidates = parts[level] & common;
        if (level + 1 == parts.size()) {
            total += candidates.count();
            return;
        }
        candidates.for_each([&] (Vertex v) {
            self(self, level + 1, common & g.neighbours(v));
        });
    };
    rec(rec, 0, g.all_vertices());
    return total;
}

inline auto count_crossing_cliques(const Graph & g, const std::vector<VertexSet> & parts) -> long long
{
    return count_crossing_cliques(g, std::span<const VertexSet>(parts));
}

/// p^C(r,2) prod |V_i|.
inline auto expected_crossing_cliques(double p, std::span<const VertexSet> parts) -> double
{
    const double r = static_cast<double>(parts.size());
    double result = std::pow(p, r * (r - 1.0) / 2.0);
    for (const auto & v : parts)
        result *= v.count();
    return result;
}

inline auto expected_crossing_cliques(double p, const std::vector<VertexSet> & parts) -> double
{
    return expected_crossing_cliques(p, std::span<const VertexSet>(parts));
}

/**
 * One layer of the good-window search: every window (c_1..c_k) that ends a
 * k-path from the start tuple through one vertex of each earlier set, with
 * the first vertex of one such path's previous window (-1 on layer 1).
 */
struct WindowLayer
{
    std::map<VertexTuple, Vertex> good;
};

/**
 * Forward search from tuple x through the ordered disjoint sets S_1..S_m
 * (m >= k). Layer i (0-based here) holds the good windows in
 * K_k(S_{i+1}..S_{i+k}). Membership is exact: a window is recorded iff some
 * k-path x, s_1, .., s_{i}, window exists with s_j in S_j.
 */
inline auto good_window_dp(const Graph & g, std::span<const Vertex> x, std::span<const VertexSet> sets, int k)
    -> std::vector<WindowLayer>
{
    if (k < 1 || static_cast<int>(sets.size()) < k)
        throw PreconditionError("good_window_dp: need at least k sets");
    detail::require_disjoint(sets, "good_window_dp");
    VertexSet xs = VertexSet::from(g.order(), x);
    for (const auto & s : sets)
        if (s.intersects(xs))
            throw PreconditionError("good_window_dp: a set meets the start tuple");

    const auto xl = static_cast<int>(x.size());
    const int layers = static_cast<int>(sets.size()) - k + 1;
    std::vector<WindowLayer> result(static_cast<std::size_t>(layers));

    // Layer 1: c_j in S_j must see x_i for every i >= j (distance at most k) and the earlier c's.
    VertexTuple window;
    auto first = [&] (auto && self, int j, const VertexSet & common) -> void {
        if (j == k) {
            result[0].good.emplace(window, -1);
            return;
        }
        VertexSet candidates = sets[static_cast<std::size_t>(j)] & common;
        for (int i = j + (xl - k) ; i < xl ; ++i)
            if (i >= 0)
                candidates &= g.neighbours(x[static_cast<std::size_t>(i)]);
        candidates.for_each([&] (Vertex v) {
            window.push_back(v);
            self(self, j + 1, common & g.neighbours(v));
            window.pop_back();
        });
    };
    first(first, 0, g.all_vertices());

    for (int layer = 1 ; layer < layers ; ++layer) {
        const auto & next_set = sets[static_cast<std::size_t>(layer + k - 1)];
        auto & out = result[static_cast<std::size_t>(layer)].good;
        // Windows sharing w_2..w_k extend to the same tuples; each extension is recorded once, from the first such w.
        std::map<VertexTuple, VertexSet> reached;
        for (const auto & [w, pred] : result[static_cast<std::size_t>(layer - 1)].good) {
            (void) pred;
            VertexTuple shifted(w.begin() + 1, w.end());
            auto [it, fresh] = reached.try_emplace(shifted, g.order());
            VertexSet candidates = common_neighbourhood(g, w, next_set) - it->second;
            it->second |= candidates;
            shifted.push_back(-1);
            candidates.for_each([&] (Vertex z) {
                shifted.back() = z;
                out.emplace(shifted, w.front());
            });
        }
    }
    return result;
}

inline auto good_window_dp(const Graph & g, std::span<const Vertex> x, const std::vector<VertexSet> & sets, int k)
    -> std::vector<WindowLayer>
{
    return good_window_dp(g, x, std::span<const VertexSet>(sets), k);
}

/// The k+1 layers over U_1..U_2k, layer i being the good cliques of K_k(U_i..U_{i+k-1}).
inline auto good_clique_dp(const Graph & g, std::span<const Vertex> x, const std::vector<VertexSet> & u, int k)
    -> std::vector<WindowLayer>
{
    if (static_cast<int>(u.size()) != 2 * k)
        throw PreconditionError("good_clique_dp: expected 2k sets");
    return good_window_dp(g, x, std::span<const VertexSet>(u), k);
}

/// Vertices s_1..s_{layer+k} of one path realising `window` on the given layer.
inline auto trace_window_path(const std::vector<WindowLayer> & layers, int layer, const VertexTuple & window)
    -> std::vector<Vertex>
{
    std::vector<Vertex> reversed(window.rbegin(), window.rend());
    VertexTuple w = window;
    for (int i = layer ; i > 0 ; --i) {
        Vertex pred = layers[static_cast<std::size_t>(i)].good.at(w);
        w.pop_back();
        w.insert(w.begin(), pred);
        reversed.push_back(pred);
    }
    return std::vector<Vertex>(reversed.rbegin(), reversed.rend());
}

}

#endif
