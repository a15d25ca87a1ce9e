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

#ifndef HAMPOW_EMBED_PIPELINE_HPP
#define HAMPOW_EMBED_PIPELINE_HPP

#include <hampow/embed/config.hpp>
#include <hampow/embed/connect.hpp>
#include <hampow/embed/extend.hpp>
#include <hampow/embed/reservoir.hpp>
#include <hampow/embed/reservoir_set.hpp>
#include <hampow/graph/graph.hpp>
#include <hampow/pseudo/connectedness.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hampow {

struct EmbedResult
{
    bool ok = false;
    /// Cyclic vertex order; empty on failure.
    std::vector<Vertex> cycle;
    /// One report per completed stage, then the failing one if any.
    std::vector<StageReport> trace;
    std::optional<StageReport> failure;
};

namespace detail {

inline auto stage_done(std::vector<StageReport> & trace, Stage stage, std::string outcome) -> StageReport &
{
    StageReport r;
    r.stage = stage;
    r.ok = true;
    r.outcome = std::move(outcome);
    trace.push_back(std::move(r));
    return trace.back();
}

/// A k-clique grown greedily from a maximum-degree vertex; ties go to the smaller id.
inline auto greedy_clique(const Graph & g, int k) -> std::vector<Vertex>
{
    std::vector<Vertex> c;
    VertexSet cand = g.all_vertices();
    while (static_cast<int>(c.size()) < k && ! cand.empty()) {
        Vertex best = -1;
        int best_deg = -1;
        cand.for_each([&] (Vertex v) {
            int d = g.neighbours(v).intersection_count(cand);
            if (d > best_deg) {
                best_deg = d;
                best = v;
            }
        });
        c.push_back(best);
        cand &= g.neighbours(best);
    }
    return c;
}

/**
 * connect() as used between the long paths. The layered search cannot run
 * in a set smaller than its interior, so tiny U falls back to the
 * shortest-first search.
 */
inline auto pipeline_connect(const Graph & g, const VertexTuple & x, const VertexTuple & y, const VertexSet & u,
        const EmbedConfig & cfg, Stage stage) -> KPath
{
    EmbedConfig local = cfg;
    if (local.connect_strategy == ConnectStrategy::layered && u.count() < connect_interior_size(cfg.k))
        local.connect_strategy = ConnectStrategy::shortest;
    try {
        return connect(g, x, y, u, local, cfg.delta_conn());
    }
    catch (const StageError & e) {
        throw e.restaged(stage);
    }
}

/**
 * Replacement for the extension phase: given the reservoir path order, the
 * leftover L and the reservoir (null when empty), returns the added
 * vertices. `target` holds the default leftover target and may be changed.
 */
using ExtensionPhase = std::function<ExtensionRun(const std::vector<Vertex> &, const VertexSet &, const VertexSet *, int &)>;

inline auto interior(const KPath & c) -> std::vector<Vertex>
{
    return std::vector<Vertex>(c.order.begin() + c.k, c.order.end() - c.k);
}

inline auto run_pipeline(const Graph & g, const EmbedConfig & cfg, std::vector<StageReport> & trace,
        const ExtensionPhase & phase = {}) -> std::vector<Vertex>
{
    const int k = cfg.k;
    const int n = g.order();
    const double p = cfg.density(g);
    Stage current = Stage::reservoir_set;
    try {
        VertexSet r = select_reservoir_set(g, cfg);
        stage_done(trace, Stage::reservoir_set, "reservoir set selected").add("|R|", r.count());

        current = Stage::reservoir_path;
        ReservoirPath rp;
        if (! r.empty()) {
            rp = reservoir_procedure(g, r, g.all_vertices() - r, cfg, cfg.delta, Stage::reservoir_path, false);
        }
        else {
            rp.path = KPath{ greedy_clique(g, k), k };
            rp.reservoir = g.empty_set();
            rp.graph = &g;
            if (static_cast<int>(rp.path.size()) < k)
                throw StageError(stage_failure(Stage::reservoir_path, "no k-clique to start from", "V"));
        }
        stage_done(trace, Stage::reservoir_path, "reservoir path built")
                .add("|V(P)|", static_cast<long long>(rp.path.size()))
                .add("segments", static_cast<long long>(rp.order.size()));

        current = Stage::extension;
        VertexSet l = g.all_vertices() - rp.path.vertex_set(n);
        int target = cfg.leftover_size ? *cfg.leftover_size : carve_count(cfg.delta_cov() * n / (200.0 * k));
        auto run = phase ? phase(rp.path.order, l, r.empty() ? nullptr : &r, target)
                : extension_search(g, rp.path.order, k, l, r.empty() ? nullptr : &r, cfg.floor_threshold(1.0 / 6.0), p,
                        target, cfg.extension_budget);
        for (Vertex x : run.added) {
            rp.path.order.push_back(x);
            l.reset(x);
        }
        {
            auto & rep = stage_done(trace, Stage::extension, run.reached ? "target reached" : "stalled; carrying a larger leftover");
            rep.add("steps", static_cast<long long>(run.added.size())).add("|L|", l.count()).add("target", target)
                    .add("backtracks", run.backtracks);
            if (! run.reached)
                rep.add("|N_L(t)|", run.stall.neighbourhood).add("fail_connected_L", run.stall.fail_l)
                        .add("fail_connected_R", run.stall.fail_r);
        }

        std::vector<Vertex> cycle;
        if (r.empty()) {
            current = Stage::assembly;
            if (! l.empty())
                throw StageError(stage_failure(Stage::covering, "leftover vertices remain and there is no reservoir", "R"));
            cycle = rp.path.order;
        }
        else if (l.empty()) {
            current = Stage::connection_1;
            auto c = pipeline_connect(g, rp.path.end_tuple(), rp.path.start_tuple(), r, cfg, Stage::connection_1);
            auto ci = interior(c);
            stage_done(trace, Stage::connection_1, "closing connection found").add("|C|", static_cast<long long>(c.size()));
            current = Stage::bypass;
            auto star = bypass(rp, VertexSet::from(n, ci));
            stage_done(trace, Stage::bypass, "reservoir bypass applied").add("|W|", static_cast<long long>(ci.size()));
            cycle = star.order;
            cycle.insert(cycle.end(), ci.begin(), ci.end());
        }
        else {
            current = Stage::covering;
            const auto u = rp.path.start_tuple();
            const auto v1 = rp.path.end_tuple();
            const double rho = cfg.floor_threshold(cfg.beta / 16.0);
            VertexSet witnesses(n);
            for (auto [t, label] : { std::pair{ u, "R_u" }, std::pair{ v1, "R_v'" } }) {
                try {
                    witnesses |= connectedness_witness(g, t, r, rho, p).y;
                }
                catch (const ConnectednessError & e) {
                    throw StageError(stage_failure(Stage::covering, std::string("no witness set: ") + e.what(), label));
                }
            }
            auto cover = reservoir_procedure(g, l, r - witnesses, cfg, cfg.delta_cov(), Stage::covering, false, false);
            const KPath & p2 = cover.path;
            stage_done(trace, Stage::covering, "leftover covered")
                    .add("|L|", l.count()).add("|V(P'')|", static_cast<long long>(p2.size())).add("|R_u + R_v'|", witnesses.count());

            current = Stage::connection_1;
            VertexSet u1 = r - p2.vertex_set(n);
            auto c = pipeline_connect(g, p2.end_tuple(), u, u1, cfg, Stage::connection_1);
            auto ci = interior(c);
            stage_done(trace, Stage::connection_1, "P'' joined to P'").add("|C|", static_cast<long long>(c.size()));

            current = Stage::connection_2;
            VertexSet u2 = u1 - VertexSet::from(n, ci);
            auto c2 = pipeline_connect(g, v1, p2.start_tuple(), u2, cfg, Stage::connection_2);
            auto c2i = interior(c2);
            stage_done(trace, Stage::connection_2, "P' joined to P''").add("|C'|", static_cast<long long>(c2.size()));

            current = Stage::bypass;
            VertexSet w = r & (p2.vertex_set(n) | VertexSet::from(n, ci) | VertexSet::from(n, c2i));
            auto star = bypass(rp, w);
            stage_done(trace, Stage::bypass, "reservoir bypass applied").add("|W|", w.count());

            cycle = star.order;
            cycle.insert(cycle.end(), c2i.begin(), c2i.end());
            cycle.insert(cycle.end(), p2.order.begin(), p2.order.end());
            cycle.insert(cycle.end(), ci.begin(), ci.end());
        }

        current = Stage::assembly;
        if (! is_hamilton_kcycle(g, cycle, k)) {
            auto rep = stage_failure(Stage::assembly, "assembled order is not a Hamilton k-cycle", "cycle");
            rep.add("length", static_cast<long long>(cycle.size()));
            throw StageError(std::move(rep));
        }
        stage_done(trace, Stage::assembly, "Hamilton k-cycle verified").add("n", n);
        return cycle;
    }
    catch (const StageError &) {
        throw;
    }
    catch (const PreconditionError & e) {
        throw StageError(stage_failure(current, e.what()));
    }
}

}

/**
 * The full construction: reservoir set, reservoir path, greedy extension,
 * leftover covering inside the reservoir, two connections through the
 * reservoir, bypass, and assembly. The result is verified as a Hamilton
 * k-cycle; any stage that cannot complete raises StageError.
 *
 * Away from the asymptotic regime the size windows of the reservoir and
 * covering lemmas cannot hold, so they are not enforced here; per-vertex
 * degree conditions and every connectedness check still are.
 */
inline auto embed_hamilton_power(const Graph & g, const EmbedConfig & cfg) -> std::vector<Vertex>
{
    cfg.validate();
    std::vector<StageReport> trace;
    return detail::run_pipeline(g, cfg, trace);
}

/// As embed_hamilton_power, but never throws StageError; the outcome and stage trace are returned.
inline auto embed_with_report(const Graph & g, const EmbedConfig & cfg) -> EmbedResult
{
    cfg.validate();
    EmbedResult result;
    try {
        result.cycle = detail::run_pipeline(g, cfg, result.trace);
        result.ok = true;
    }
    catch (const StageError & e) {
        result.failure = e.report();
        result.trace.push_back(e.report());
    }
    return result;
}

}

#endif
