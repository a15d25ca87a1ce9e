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

#ifndef HAMPOW_EMBED_RESERVOIR_SET_HPP
#define HAMPOW_EMBED_RESERVOIR_SET_HPP

#include <hampow/embed/config.hpp>
#include <hampow/graph/graph.hpp>
#include <hampow/rng.hpp>

#include <algorithm>
#include <string>

namespace hampow {

namespace detail {

inline auto min_degree_failure(const Graph & g, const EmbedConfig & cfg) -> std::optional<StageReport>
{
    const double p = cfg.density(g);
    const double need = cfg.floor_threshold(cfg.beta * p * g.order());
    if (g.order() > 0 && g.min_degree() < need - discrepancy_tolerance) {
        auto r = stage_failure(Stage::reservoir_set, "min-degree precondition fails: delta(G) = "
                + std::to_string(g.min_degree()) + " < beta p n = " + std::to_string(need), "V");
        r.add("min_degree", g.min_degree());
        r.add("required", static_cast<long long>(std::ceil(need - discrepancy_tolerance)));
        return r;
    }
    return std::nullopt;
}

}

/// Checks the three reservoir-set properties with slack; returns the first violation or an empty string.
inline auto reservoir_set_violation(const Graph & g, const VertexSet & r, const EmbedConfig & cfg, bool check_size = true)
    -> std::string
{
    const double n = g.order();
    const double p = cfg.density(g);
    const int k = cfg.k;
    const int size = r.count();
    if (check_size) {
        const double initial = quota_count(2.0 * cfg.delta * cfg.delta * n / (200.0 * k));
        if (size < cfg.floor_threshold(cfg.delta * cfg.delta * n / (200.0 * k)) - discrepancy_tolerance)
            return "|R| = " + std::to_string(size) + " is below delta^2 n/(200k)";
        if (size > cfg.ceiling_threshold(std::max(initial, cfg.delta * n / (200.0 * k))) + discrepancy_tolerance)
            return "|R| = " + std::to_string(size) + " is above delta n/(200k)";
    }
    const double outside_need = cfg.floor_threshold(cfg.beta * p * size / 2.0);
    const double inside_need = cfg.floor_threshold(cfg.beta * p * n / 2.0);
    const VertexSet rest = g.all_vertices() - r;
    for (Vertex v = 0 ; v < g.order() ; ++v) {
        if (r.contains(v)) {
            if (g.neighbours(v).intersection_count(rest) < inside_need - discrepancy_tolerance)
                return "reservoir vertex " + std::to_string(v) + " has too few neighbours outside R";
        }
        else if (g.neighbours(v).intersection_count(r) < outside_need - discrepancy_tolerance)
            return "vertex " + std::to_string(v) + " has too few neighbours in R";
    }
    return {};
}

/**
 * Picks a reservoir set: a seeded-random R' of 2 delta^2 n/(200k) vertices
 * (or cfg.reservoir_size), minus members with fewer than 3 beta p n/4
 * neighbours outside R', plus every outside vertex with fewer than
 * beta p |R''| neighbours in what remains. Thresholds carry slack.
 *
 * Returns the empty set when cfg.reservoir_size is 0. The size bounds are
 * not checked when the size is overridden.
 */
inline auto select_reservoir_set(const Graph & g, const EmbedConfig & cfg) -> VertexSet
{
    cfg.validate();
    if (auto failure = detail::min_degree_failure(g, cfg))
        throw StageError(*failure);
    if (cfg.reservoir_size && *cfg.reservoir_size == 0)
        return g.empty_set();

    const int n = g.order();
    const double p = cfg.density(g);
    const int initial = cfg.reservoir_size ? *cfg.reservoir_size
            : quota_count(2.0 * cfg.delta * cfg.delta * n / (200.0 * cfg.k));
    if (initial > n)
        throw StageError(stage_failure(Stage::reservoir_set, "reservoir size exceeds the vertex count"));

    std::string last;
    for (int attempt = 0 ; attempt < cfg.max_retries ; ++attempt) {
        Rng rng(cfg.seed * 0x9e3779b97f4a7c15ULL + 0x5eed0000ULL + static_cast<std::uint64_t>(attempt));
        std::vector<Vertex> all(static_cast<std::size_t>(n));
        for (int v = 0 ; v < n ; ++v)
            all[static_cast<std::size_t>(v)] = v;
        shuffle(all, rng);
        VertexSet r1(n);
        for (int i = 0 ; i < initial ; ++i)
            r1.set(all[static_cast<std::size_t>(i)]);

        const VertexSet outside = g.all_vertices() - r1;
        VertexSet r2 = r1;
        r1.for_each([&] (Vertex v) {
            if (g.neighbours(v).intersection_count(outside) < cfg.floor_threshold(3.0 * cfg.beta * p * n / 4.0) - discrepancy_tolerance)
                r2.reset(v);
        });
        VertexSet r = r2;
        const double absorb = cfg.floor_threshold(cfg.beta * p * r2.count());
        for (Vertex v = 0 ; v < n ; ++v)
            if (! r2.contains(v) && g.neighbours(v).intersection_count(r2) < absorb - discrepancy_tolerance)
                r.set(v);

        last = reservoir_set_violation(g, r, cfg, ! cfg.reservoir_size);
        if (last.empty())
            return r;
    }
    auto report = stage_failure(Stage::reservoir_set, last, "R");
    report.add("initial_size", initial);
    throw StageError(std::move(report));
}

}

#endif
