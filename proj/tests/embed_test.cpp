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


#include "support.hpp"

#include <hampow/embed/extend.hpp>
#include <hampow/embed/pipeline.hpp>
#include <hampow/embed/reservoir_set.hpp>
#include <hampow/gen/generators.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace hampow;
using hampow::testing::random_clique;
using hampow::testing::random_subset;

namespace {
    auto range_set(int n, int lo, int hi) -> VertexSet
    {
        VertexSet s(n);
        for (int v = lo ; v < hi ; ++v)
            s.set(v);
        return s;
    }

    // Degree scans written without the library's helpers.
    auto reservoir_properties_hold(const Graph & g, const VertexSet & r, double beta, double p) -> bool
    {
        const int n = g.order();
        const int size = r.count();
        for (Vertex v = 0 ; v < n ; ++v) {
            int in = 0;
            int out = 0;
            for (Vertex u : g.neighbours(v).to_vector())
                (r.contains(u) ? in : out) += 1;
            if (r.contains(v) ? out < beta * p * n / 2.0 : in < beta * p * size / 2.0)
                return false;
        }
        return true;
    }

    // Every candidate the extension rule may pick, by brute force.
    auto best_extension(const Graph & g, const VertexTuple & t, const VertexSet & l, const VertexSet & r, double rho, double p)
        -> Vertex
    {
        Vertex best = -1;
        int best_deg = -1;
        for (Vertex x : l.to_vector()) {
            bool adjacent = true;
            for (Vertex v : t)
                adjacent = adjacent && g.adjacent(v, x);
            if (! adjacent)
                continue;
            VertexTuple next(t.begin() + 1, t.end());
            next.push_back(x);
            VertexSet rest = l;
            rest.reset(x);
            if (! is_connected_tuple(g, next, rest, rho, p) || ! is_connected_tuple(g, next, r, rho, p))
                continue;
            int d = 0;
            for (Vertex y : rest.to_vector()) {
                bool all = true;
                for (Vertex v : next)
                    all = all && g.adjacent(v, y);
                d += all;
            }
            if (d > best_deg) {
                best_deg = d;
                best = x;
            }
        }
        return best;
    }

    auto calibrated_gnp_config(std::uint64_t seed) -> EmbedConfig
    {
        EmbedConfig cfg;
        cfg.slack = 0.02;
        cfg.reservoir_size = 87;
        cfg.gadget = GadgetKind::compact;
        cfg.connect_strategy = ConnectStrategy::shortest;
        cfg.seed = seed;
        return cfg;
    }
}

TEST(ReservoirSet, CompleteGraph)
{
    auto g = complete_graph(200);
    EmbedConfig cfg;
    cfg.beta = 0.49;
    cfg.delta = 0.2;
    cfg.p = 0.995;
    VertexSet r = select_reservoir_set(g, cfg);
    EXPECT_EQ(r.count(), static_cast<int>(std::ceil(0.2 * 0.2 * 200 / 400.0)));
    EXPECT_TRUE(reservoir_properties_hold(g, r, cfg.beta, 0.995));
    EXPECT_EQ(reservoir_set_violation(g, r, cfg), "");
}

TEST(ReservoirSet, RandomGraphRecheck)
{
    auto g = gnp(2000, 0.2, 1);
    EmbedConfig cfg;
    cfg.beta = 0.49;
    cfg.delta = 0.1;
    // The default R' has one vertex here, so absorption swallows every non-neighbour.
    EXPECT_THROW(select_reservoir_set(g, cfg), StageError);

    for (int size : { 40, 80 }) {
        cfg.reservoir_size = size;
        VertexSet r = select_reservoir_set(g, cfg);
        EXPECT_GE(r.count(), size / 2);
        EXPECT_LE(r.count(), 2000 / 4);
        EXPECT_TRUE(reservoir_properties_hold(g, r, cfg.beta, g.density()));
    }
}

TEST(ReservoirSet, IsolatedVertexFailsMinDegree)
{
    auto base = complete_graph(50);
    std::vector<Edge> edges;
    for (auto e : base.edges())
        if (e.first != 7 && e.second != 7)
            edges.push_back(e);
    auto g = build_graph(50, edges);
    EmbedConfig cfg;
    try {
        select_reservoir_set(g, cfg);
        FAIL() << "expected a reservoir_set failure";
    }
    catch (const StageError & e) {
        EXPECT_EQ(e.report().stage, Stage::reservoir_set);
        EXPECT_NE(e.report().outcome.find("min-degree"), std::string::npos);
        EXPECT_EQ(e.report().value("min_degree"), 0);
    }
}

TEST(ExtendStep, CompleteGraphPicksSmallestId)
{
    auto g = complete_graph(30);
    EmbedConfig cfg;
    VertexTuple t{ 0, 1 };
    VertexSet l = range_set(30, 2, 16);
    VertexSet r = range_set(30, 16, 30);
    Vertex x = extend_step(g, t, l, r, cfg);
    EXPECT_EQ(x, 2);
    VertexSet rest = l;
    rest.reset(x);
    VertexTuple next{ 1, x };
    EXPECT_TRUE(is_connected_tuple(g, next, rest, 1.0 / 6.0, g.density()));
    EXPECT_TRUE(is_connected_tuple(g, next, r, 1.0 / 6.0, g.density()));
}

TEST(ExtendStep, RandomGraphMatchesBruteForce)
{
    auto g = gnp(500, 0.3, 7);
    const double p = g.density();
    EmbedConfig cfg;
    Rng rng(7);
    int checked = 0;
    for (int round = 0 ; round < 20 ; ++round) {
        VertexTuple t = random_clique(g, 2, rng, g.all_vertices());
        ASSERT_EQ(t.size(), 2u);
        VertexSet rest = g.all_vertices() - VertexSet::from(500, t);
        VertexSet l = random_subset(rest, 200, rng);
        VertexSet r = rest - l;
        if (! is_connected_tuple(g, t, l, 1.0 / 8.0, p) || ! is_connected_tuple(g, t, r, 1.0 / 8.0, p))
            continue;
        ++checked;
        Vertex x = extend_step(g, t, l, r, cfg);
        EXPECT_EQ(x, best_extension(g, t, l, r, 1.0 / 6.0, p));
        VertexSet lx = l;
        lx.reset(x);
        VertexTuple next{ t[1], x };
        EXPECT_TRUE(g.adjacent(t[0], x) && g.adjacent(t[1], x));
        EXPECT_TRUE(is_connected_tuple(g, next, lx, 1.0 / 6.0, p));
        EXPECT_TRUE(is_connected_tuple(g, next, r, 1.0 / 6.0, p));
    }
    EXPECT_GE(checked, 10);
}

TEST(ExtendStep, Preconditions)
{
    auto g = complete_graph(30);
    EmbedConfig cfg;
    VertexTuple t{ 0, 1 };
    VertexSet r = range_set(30, 16, 30);
    try {
        extend_step(g, t, g.empty_set(), r, cfg);
        FAIL() << "expected a precondition error";
    }
    catch (const PreconditionError & e) {
        EXPECT_NE(std::string(e.what()).find("delta_onestep"), std::string::npos);
    }
    EXPECT_THROW(extend_step(g, t, range_set(30, 2, 20), r, cfg), PreconditionError);
    EXPECT_THROW(extend_step(g, VertexTuple{ 0 }, range_set(30, 2, 16), r, cfg), PreconditionError);
}

TEST(ExtendStep, NoCandidateReportsCounts)
{
    // L is independent, so no (1,x) has a common neighbour left in L.
    std::vector<Edge> edges{ { 0, 1 } };
    for (int v = 2 ; v < 20 ; ++v) {
        edges.emplace_back(0, v);
        edges.emplace_back(1, v);
    }
    for (int v = 2 ; v < 20 ; ++v)
        for (int u = std::max(v + 1, 10) ; u < 20 ; ++u)
            edges.emplace_back(v, u);
    auto g = build_graph(20, edges);
    EmbedConfig cfg;
    try {
        extend_step(g, VertexTuple{ 0, 1 }, range_set(20, 2, 10), range_set(20, 10, 20), cfg);
        FAIL() << "expected an extension failure";
    }
    catch (const StageError & e) {
        EXPECT_EQ(e.report().stage, Stage::extension);
        EXPECT_EQ(e.report().empty_set, "candidates");
        EXPECT_EQ(e.report().value("|N_L(t)|"), 8);
        EXPECT_EQ(e.report().value("fail_connected_L"), 8);
        EXPECT_EQ(e.report().value("fail_connected_R"), 0);
    }
}

TEST(ExtensionSearch, ProgressIsMonotone)
{
    auto g = gnp(500, 0.35, 31);
    const double p = g.density();
    Rng rng(5);
    VertexTuple t = random_clique(g, 2, rng, g.all_vertices());
    VertexSet l = g.all_vertices() - VertexSet::from(500, t);
    std::vector<Vertex> path(t.begin(), t.end());
    auto run = detail::extension_search(g, path, 2, l, nullptr, 0.02 / 6.0, p, 10, 0);
    ASSERT_FALSE(run.added.empty());
    VertexSet seen = VertexSet::from(500, t);
    int remaining = l.count();
    for (Vertex x : run.added) {
        ASSERT_TRUE(l.contains(x));
        ASSERT_FALSE(seen.contains(x));
        seen.set(x);
        --remaining;
        EXPECT_EQ(remaining, (l - seen).count());
    }
    path.insert(path.end(), run.added.begin(), run.added.end());
    EXPECT_TRUE(verify_kpower(g, path, 2, false));
}

TEST(Pipeline, CompleteGraph)
{
    auto g = complete_graph(100);
    EmbedConfig cfg;
    cfg.beta = 0.49;
    auto cycle = embed_hamilton_power(g, cfg);
    EXPECT_EQ(cycle.size(), 100u);
    EXPECT_TRUE(verify_kpower(g, cycle, 2, true));
    EXPECT_TRUE(is_hamilton_kcycle(g, cycle, 2));
}

TEST(Pipeline, RandomGraphCalibrated)
{
    auto g = gnp(500, 0.35, 31);
    auto result = embed_with_report(g, calibrated_gnp_config(0));
    ASSERT_TRUE(result.ok) << describe(result.trace.back());
    EXPECT_TRUE(is_hamilton_kcycle(g, result.cycle, 2));
    EXPECT_EQ(result.trace.back().stage, Stage::assembly);
    EXPECT_FALSE(result.failure.has_value());
}

TEST(Pipeline, CubeOfHamiltonCycle)
{
    auto g = complete_graph(60);
    EmbedConfig cfg;
    cfg.k = 3;
    cfg.slack = 0.02;
    cfg.reservoir_size = 3;
    cfg.gadget = GadgetKind::compact;
    cfg.connect_strategy = ConnectStrategy::shortest;
    auto cycle = embed_hamilton_power(g, cfg);
    EXPECT_TRUE(is_hamilton_kcycle(g, cycle, 3));
}

TEST(Pipeline, DisjointCliquesFail)
{
    auto g = disjoint_cliques(2, 50);
    EmbedConfig cfg;
    cfg.slack = 0.02;
    cfg.reservoir_size = 3;
    cfg.gadget = GadgetKind::compact;
    cfg.connect_strategy = ConnectStrategy::shortest;
    auto result = embed_with_report(g, cfg);
    EXPECT_FALSE(result.ok);
    EXPECT_TRUE(result.cycle.empty());
    ASSERT_TRUE(result.failure.has_value());
    EXPECT_NE(result.failure->stage, Stage::assembly);
    EXPECT_NE(result.failure->outcome.find("connection"), std::string::npos);
    EXPECT_THROW(embed_hamilton_power(g, cfg), StageError);

    cfg.reservoir_size = 0;
    auto bare = embed_with_report(g, cfg);
    EXPECT_FALSE(bare.ok);
    ASSERT_TRUE(bare.failure.has_value());
    EXPECT_EQ(bare.failure->empty_set, "R");
}

TEST(Pipeline, Deterministic)
{
    auto g = gnp(500, 0.35, 32);
    auto a = embed_with_report(g, calibrated_gnp_config(1));
    auto b = embed_with_report(g, calibrated_gnp_config(1));
    EXPECT_EQ(a.ok, b.ok);
    EXPECT_EQ(a.cycle, b.cycle);
    ASSERT_EQ(a.trace.size(), b.trace.size());
    for (std::size_t i = 0 ; i < a.trace.size() ; ++i)
        EXPECT_EQ(a.trace[i].diagnostics, b.trace[i].diagnostics);
}

TEST(Pipeline, InvalidConfigRejected)
{
    auto g = complete_graph(20);
    EmbedConfig cfg;
    cfg.beta = 0.5;
    EXPECT_THROW(embed_hamilton_power(g, cfg), PreconditionError);
    cfg.beta = 0.25;
    cfg.k = 1;
    EXPECT_THROW(embed_hamilton_power(g, cfg), PreconditionError);
}
