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

#ifndef HAMPOW_EMBED_RESERVOIR_HPP
#define HAMPOW_EMBED_RESERVOIR_HPP

#include <hampow/embed/config.hpp>
#include <hampow/embed/connect.hpp>
#include <hampow/graph/graph.hpp>
#include <hampow/pseudo/connectedness.hpp>
#include <hampow/rng.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

namespace hampow {

/**
 * A reservoir graph: two traversals with the same first k and last k
 * vertices, one through r and one skipping it.
 */
struct ReservoirSegment
{
    Vertex reservoir_vertex = -1;
    std::vector<Vertex> with_r;
    std::vector<Vertex> without_r;

    auto start_tuple(int k) const -> VertexTuple { return KPath{ with_r, k }.start_tuple(); }
    auto end_tuple(int k) const -> VertexTuple { return KPath{ with_r, k }.end_tuple(); }
};

/// The segment invariants: both traversals valid, same end tuples, one vertex apart, bounded size.
inline auto segment_valid(const Graph & g, const ReservoirSegment & s, int k) -> bool
{
    const auto ks = static_cast<std::size_t>(k);
    if (s.with_r.size() != s.without_r.size() + 1 || s.without_r.size() < 2 * ks)
        return false;
    if (static_cast<int>(s.with_r.size()) > std::max(47, 2 * k + 1))
        return false;
    if (! verify_kpower(g, s.with_r, k, false) || ! verify_kpower(g, s.without_r, k, false))
        return false;
    if (! std::equal(s.with_r.begin(), s.with_r.begin() + k, s.without_r.begin())
            || ! std::equal(s.with_r.end() - k, s.with_r.end(), s.without_r.end() - k))
        return false;
    VertexSet a = VertexSet::from(g.order(), s.with_r);
    VertexSet b = VertexSet::from(g.order(), s.without_r);
    if (a.count() != static_cast<int>(s.with_r.size()) || b.count() != static_cast<int>(s.without_r.size()))
        return false;
    a.reset(s.reservoir_vertex);
    return s.reservoir_vertex >= 0 && ! b.contains(s.reservoir_vertex) && a.count() == b.count() && a.is_subset_of(b);
}

/**
 * A k-path built from reservoir graphs joined by connections. `order` lists
 * the reservoir vertices along the path and `offsets` the index in
 * path.order where each one's segment starts.
 */
struct ReservoirPath
{
    KPath path;
    VertexSet reservoir{ 0 };
    std::map<Vertex, ReservoirSegment> segments;
    std::vector<KPath> connectors;
    std::vector<Vertex> order;
    std::vector<std::size_t> offsets;
    /// The host graph, used to re-verify bypasses.
    const Graph * graph = nullptr;
};

namespace detail {

inline auto mix_seed(std::initializer_list<std::uint64_t> parts) -> std::uint64_t
{
    std::uint64_t h = 0x243f6a8885a308d3ULL;
    for (auto x : parts) {
        h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 0xbf58476d1ce4e5b9ULL;
    }
    return h;
}

/// min over non-empty Y - v of deg_Y(v) / (p |Y - v|), or -1 when some degree is below factor p |Y - v|.
inline auto typicality(const Graph & g, Vertex v, const std::vector<VertexSet> & sets, double p, double factor) -> double
{
    double score = 1e300;
    for (const auto & y : sets) {
        const int size = y.count() - (y.contains(v) ? 1 : 0);
        if (size == 0)
            continue;
        const int d = g.neighbours(v).intersection_count(y);
        if (d < factor * p * size - discrepancy_tolerance)
            return -1.0;
        score = std::min(score, d / (p * size));
    }
    return score;
}

inline auto gadget_failure(std::string outcome, std::string set) -> StageError
{
    return StageError(stage_failure(Stage::reservoir_path, std::move(outcome), std::move(set)));
}

inline auto check_carved(const VertexSet & s, double proof, const EmbedConfig & cfg, const std::string & label) -> void
{
    if (s.count() < std::max(1, quota_count(cfg.floor_threshold(proof)))) {
        auto r = stage_failure(Stage::reservoir_path, "carved set " + label + " has " + std::to_string(s.count())
                + " vertices, below its floor", label);
        r.add("|" + label + "|", s.count());
        throw StageError(std::move(r));
    }
}

/**
 * End tuples (1/2,p)-connected to S and R* outside the segment. r itself
 * stays in R*: a reservoir vertex reused by a later connection is bypassed.
 */
inline auto check_segment_ends(const Graph & g, const ReservoirSegment & seg, const VertexSet & s, const VertexSet & rstar,
        const EmbedConfig & cfg, double p) -> void
{
    const VertexSet used = VertexSet::from(g.order(), seg.without_r);
    for (auto [tuple, label] : { std::pair{ seg.start_tuple(cfg.k), "start" }, std::pair{ seg.end_tuple(cfg.k), "end" } })
        for (auto [set, name] : { std::pair{ s - used, "S" }, std::pair{ rstar - used, "R*" } })
            if (first_failed_suffix(g, tuple, set, cfg.floor_threshold(0.5), p) != 0)
                throw gadget_failure(std::string(label) + " tuple is not (1/2,p)-connected to " + name, name);
}

/**
 * The 2k+1 construction: a k-path x_1..x_2k inside N_S(r) found by a
 * bounded depth-first search. Candidates are tried most typical first with
 * respect to R*, S and the unused part of N_S(r); a leaf is accepted once
 * both end tuples are (1/2,p)-connected to S and R* outside the segment.
 * Given a tuple e to follow, candidates that let x_1..x_k continue e
 * directly are tried first.
 */
inline auto compact_reservoir_graph(const Graph & g, Vertex r, const VertexSet & s, const VertexSet & rstar,
        const EmbedConfig & cfg, double delta, std::span<const Vertex> join_after = {}) -> ReservoirSegment
{
    const int k = cfg.k;
    const double p = cfg.density(g);
    const double n = g.order();
    const VertexSet pool = g.neighbours(r) & s;
    check_carved(pool, std::max(cfg.beta * delta * p * n / 8.0, 2.0 * k / cfg.slack), cfg, "N_S(r)");

    std::vector<Vertex> chosen;
    VertexSet free = pool;
    auto window = [&] (const VertexSet & y, int a, int b) {
        if (a > b)
            return y;
        return common_neighbourhood(g, std::span<const Vertex>(chosen).subspan(static_cast<std::size_t>(a - 1),
                static_cast<std::size_t>(b - a + 1)), y);
    };
    // Positions 1..k hang off r's left side, k+1..2k its right side; a window never crosses r's slot.
    auto lo = [&] (int i) { return i <= k ? 1 : std::max(k + 1, i - k); };
    auto score_of = [&] (Vertex v, int i) {
        double score = 1e300;
        auto take = [&] (const VertexSet & y) {
            const int size = y.count() - (y.contains(v) ? 1 : 0);
            if (size > 0)
                score = std::min(score, g.neighbours(v).intersection_count(y) / (p * size));
        };
        take(window(rstar, lo(i), i - 1));
        take(window(s, lo(i), i - 1));
        take(window(free, std::max(lo(i), i - k + 1), i - 1));
        return score;
    };

    long long nodes = 0;
    const long long budget = std::min<long long>(cfg.search_budget, 20000);
    int deepest = 1;
    ReservoirSegment seg;
    seg.reservoir_vertex = r;
    std::string last_end;
    bool joining = false;
    auto rec = [&] (auto && self, int i) -> bool {
        if (i > 2 * k) {
            seg.with_r.assign(chosen.begin(), chosen.begin() + k);
            seg.with_r.push_back(r);
            seg.with_r.insert(seg.with_r.end(), chosen.begin() + k, chosen.end());
            seg.without_r = chosen;
            try {
                check_segment_ends(g, seg, s, rstar, cfg, p);
                return true;
            }
            catch (const StageError & e) {
                last_end = e.what();
                return false;
            }
        }
        deepest = std::max(deepest, i);
        if (i == k + 1) {
            // Prune on the start tuple before searching the right side.
            const VertexSet used = VertexSet::from(g.order(), chosen);
            VertexTuple start(chosen.rbegin(), chosen.rend());
            for (const auto * set : { &s, &rstar })
                if (first_failed_suffix(g, start, *set - used, cfg.floor_threshold(0.5), p) != 0) {
                    last_end = set == &s ? "start tuple is not (1/2,p)-connected to S" : "start tuple is not (1/2,p)-connected to R*";
                    return false;
                }
        }
        // Both orders must be k-paths; the one without r is the tighter.
        VertexSet cand = free;
        for (int j = std::max(1, i - k) ; j < i ; ++j)
            cand &= g.neighbours(chosen[static_cast<std::size_t>(j - 1)]);
        // x_i continues e_1..e_k when it sees e_i..e_k.
        VertexSet joins = g.empty_set();
        if (i <= k && static_cast<int>(join_after.size()) == k && (i == 1 || joining)) {
            joins = cand;
            for (int j = i ; j <= k ; ++j)
                joins &= g.neighbours(join_after[static_cast<std::size_t>(j - 1)]);
        }
        std::vector<std::tuple<bool, double, Vertex>> ranked;
        cand.for_each([&] (Vertex v) { ranked.emplace_back(! joins.contains(v), -score_of(v, i), v); });
        std::sort(ranked.begin(), ranked.end());
        for (auto [miss, score, v] : ranked) {
            const bool was_joining = joining;
            if (i <= k)
                joining = ! miss;
            if (++nodes > budget)
                return false;
            chosen.push_back(v);
            free.reset(v);
            if (self(self, i + 1))
                return true;
            free.set(v);
            chosen.pop_back();
            joining = was_joining;
        }
        return false;
    };
    if (! rec(rec, 1)) {
        auto label = "x" + std::to_string(deepest);
        auto report = stage_failure(Stage::reservoir_path, last_end.empty() ? "no k-path through N_S(r) reaches " + label
                : "no segment with connected ends: " + last_end, "N_S(r)");
        report.add("|N_S(r)|", pool.count());
        report.add("search_nodes", nodes);
        throw StageError(std::move(report));
    }
    return seg;
}

/// Candidate sets of one side (a or b) of the 47-vertex construction, for a fixed a3.
struct GadgetSide
{
    Vertex v3 = -1;
    VertexSet c4{ 0 };
    VertexSet c5{ 0 };
    std::map<Vertex, VertexSet> c6;
    std::map<Vertex, VertexSet> c7;
    VertexSet c7_union{ 0 };
    /// For each v7: the (v5, C8(v5,v7)) pairs, and the union of the C8 neighbourhoods.
    std::map<Vertex, std::vector<std::pair<Vertex, VertexSet>>> c8;
    std::map<Vertex, VertexSet> reach;
};

inline auto build_gadget_side(const Graph & g, const std::vector<VertexSet> & x, const VertexSet & s,
        const VertexSet & rstar, const EmbedConfig & cfg, double p, const std::string & prefix) -> GadgetSide
{
    // x[0..5] = X3..X8 of this side.
    const double sl = cfg.slack;
    const double ss = s.count();
    const double rs = rstar.count();
    auto x_ = [&] (int i) -> const VertexSet & { return x[static_cast<std::size_t>(i - 3)]; };
    auto at_least = [&] (Vertex v, const VertexSet & y, double need) {
        return g.neighbours(v).intersection_count(y) >= need - discrepancy_tolerance;
    };
    auto name = [&] (int i) { return prefix + std::to_string(i); };

    std::vector<std::pair<double, Vertex>> c3;
    x_(3).for_each([&] (Vertex v) {
        double score = typicality(g, v, { x_(4), x_(5), x_(6), s }, p, sl / 2.0);
        if (score >= 0.0)
            c3.emplace_back(-score, v);
    });
    if (c3.empty())
        throw gadget_failure("candidate set " + name(3) + " is empty", name(3));
    std::sort(c3.begin(), c3.end());

    std::string empty = name(4);
    const int tries = std::min<int>(static_cast<int>(c3.size()), 8);
    for (int attempt = 0 ; attempt < tries ; ++attempt) {
        GadgetSide side;
        side.v3 = c3[static_cast<std::size_t>(attempt)].second;
        const Vertex a3 = side.v3;
        const VertexSet ns3 = g.neighbours(a3) & s;
        const VertexSet n5 = g.neighbours(a3) & x_(5);
        const VertexSet n6 = g.neighbours(a3) & x_(6);

        side.c4 = g.empty_set();
        (g.neighbours(a3) & x_(4)).for_each([&] (Vertex v) {
            if (at_least(v, n5, sl * p * p * x_(5).count() / 4.0) && at_least(v, s, sl * p * ss / 2.0)
                    && at_least(v, ns3, sl * p * p * ss / 4.0))
                side.c4.set(v);
        });
        if (side.c4.empty()) {
            empty = name(4);
            continue;
        }
        side.c5 = g.empty_set();
        n5.for_each([&] (Vertex v) {
            if (g.neighbours(v).intersects(side.c4) && at_least(v, n6, sl * p * p * x_(6).count() / 4.0)
                    && at_least(v, x_(7), sl * p * x_(7).count() / 2.0) && at_least(v, x_(8), sl * p * x_(8).count() / 2.0)
                    && at_least(v, s, sl * p * ss / 2.0))
                side.c5.set(v);
        });
        if (side.c5.empty()) {
            empty = name(5);
            continue;
        }
        side.c7_union = g.empty_set();
        side.c5.for_each([&] (Vertex a5) {
            const VertexSet ns5 = g.neighbours(a5) & s;
            const VertexSet n7 = g.neighbours(a5) & x_(7);
            const VertexSet n8 = g.neighbours(a5) & x_(8);
            VertexSet c6 = g.empty_set();
            (n6 & g.neighbours(a5)).for_each([&] (Vertex v) {
                if (at_least(v, n7, sl * p * p * x_(7).count() / 4.0) && at_least(v, s, sl * p * ss / 2.0)
                        && at_least(v, ns5, sl * p * p * ss / 4.0))
                    c6.set(v);
            });
            VertexSet c7 = g.empty_set();
            n7.for_each([&] (Vertex v) {
                if (g.neighbours(v).intersects(c6) && at_least(v, n8, sl * p * p * x_(8).count() / 4.0)
                        && at_least(v, s, sl * p * ss / 2.0) && at_least(v, rstar, sl * p * rs / 2.0))
                    c7.set(v);
            });
            c7.for_each([&] (Vertex a7) {
                const VertexSet ns7 = g.neighbours(a7) & s;
                const VertexSet nr7 = g.neighbours(a7) & rstar;
                VertexSet c8 = g.empty_set();
                (n8 & g.neighbours(a7)).for_each([&] (Vertex v) {
                    if (at_least(v, s, sl * p * ss / 2.0) && at_least(v, rstar, sl * p * rs / 2.0)
                            && at_least(v, ns7, sl * p * p * ss / 4.0) && at_least(v, nr7, sl * p * p * rs / 4.0))
                        c8.set(v);
                });
                if (c8.empty())
                    return;
                auto [it, fresh] = side.reach.try_emplace(a7, g.empty_set());
                (void) fresh;
                c8.for_each([&] (Vertex v) { it->second |= g.neighbours(v); });
                side.c8[a7].emplace_back(a5, c8);
            });
            side.c6.emplace(a5, std::move(c6));
            side.c7.emplace(a5, c7);
            side.c7_union |= c7;
        });
        if (side.c8.empty()) {
            empty = side.c7_union.empty() ? name(7) : name(8);
            continue;
        }
        return side;
    }
    throw gadget_failure("candidate set " + empty + " is empty", empty);
}

/**
 * The 47-vertex 2-reservoir graph: spine a1 a2 r b2 b1, candidate sets in
 * X3..X8 and X3'..X8', a doubly-good edge a7 b7, and three internal
 * connections inside S minus the spine.
 */
inline auto paper_reservoir_graph(const Graph & g, Vertex r, const VertexSet & s, const VertexSet & rstar,
        const EmbedConfig & cfg, double delta, Rng & rng, int attempt) -> ReservoirSegment
{
    const double p = cfg.density(g);
    const double factor = cfg.floor_threshold(1.0 - cfg.working_epsilon());
    const VertexSet nsr = g.neighbours(r) & s;

    // Spine: the most typical choice first; later attempts pick uniformly among typical vertices.
    auto pick = [&] (const VertexSet & cand, const std::vector<VertexSet> & sets, const std::string & label) {
        std::vector<std::pair<double, Vertex>> ranked;
        cand.for_each([&] (Vertex v) {
            double score = typicality(g, v, sets, p, factor);
            if (score >= 0.0)
                ranked.emplace_back(-score, v);
        });
        if (ranked.empty())
            throw gadget_failure("no typical choice for " + label, label);
        std::sort(ranked.begin(), ranked.end());
        if (attempt == 0)
            return ranked.front().second;
        return ranked[static_cast<std::size_t>(rng.below(ranked.size()))].second;
    };
    const Vertex a1 = pick(nsr, { s, rstar, nsr }, "a1");
    VertexSet c = nsr & g.neighbours(a1);
    const Vertex a2 = pick(c, { s, rstar, nsr, g.neighbours(a1) & s, g.neighbours(a1) & rstar }, "a2");
    c = nsr & g.neighbours(a2);
    c.reset(a1);
    const Vertex b2 = pick(c, { s, nsr }, "b2");
    c = nsr & g.neighbours(b2);
    c.reset(a1);
    c.reset(a2);
    const Vertex b1 = pick(c, { s, g.neighbours(b2) & s }, "b1");

    VertexSet base = s;
    for (auto v : { a1, a2, b1, b2 })
        base.reset(v);
    const double ss = s.count();
    const int share = base.count() / 12;
    auto target = [&] (double proof) { return std::min(share, quota_count(cfg.ceiling_threshold(proof))); };
    auto [x3, y3] = carve_pair(base & g.neighbours(a1) & g.neighbours(a2), base & g.neighbours(b1) & g.neighbours(b2),
            target(p * p * ss / 20.0), rng);
    base -= x3;
    base -= y3;
    auto [x4, y4] = carve_pair(base & g.neighbours(a2), base & g.neighbours(b2), target(p * ss / 20.0), rng);
    base -= x4;
    base -= y4;
    auto big = carve_uniform(base, 8, quota_count(cfg.ceiling_threshold(ss / 20.0)), rng);
    check_carved(x3, p * p * ss / 20.0, cfg, "X3");
    check_carved(y3, p * p * ss / 20.0, cfg, "X3'");
    check_carved(x4, p * ss / 20.0, cfg, "X4");
    check_carved(y4, p * ss / 20.0, cfg, "X4'");
    for (int i = 0 ; i < 8 ; ++i)
        check_carved(big[static_cast<std::size_t>(i)], ss / 20.0, cfg,
                "X" + std::to_string(5 + i % 4) + (i >= 4 ? "'" : ""));

    auto side_a = build_gadget_side(g, { x3, x4, big[0], big[1], big[2], big[3] }, s, rstar, cfg, p, "A");
    auto side_b = build_gadget_side(g, { y3, y4, big[4], big[5], big[6], big[7] }, s, rstar, cfg, p, "B");

    // A doubly-good edge a7 b7.
    Vertex a7 = -1, b7 = -1;
    for (const auto & [v, reach] : side_a.reach) {
        VertexSet cand = g.neighbours(v) & reach;
        cand.for_each([&] (Vertex w) {
            if (b7 >= 0 || ! side_b.reach.count(w))
                return;
            if (side_b.reach.at(w).contains(v)) {
                a7 = v;
                b7 = w;
            }
        });
        if (a7 >= 0)
            break;
    }
    if (a7 < 0) {
        auto report = stage_failure(Stage::reservoir_path, "no doubly-good edge between A7 and B7", "good(A7,B7)");
        report.add("|A7|", side_a.c7_union.count());
        report.add("|B7|", side_b.c7_union.count());
        report.add("edges(A7,B7)", edges_between(g, side_a.c7_union - side_b.c7_union, side_b.c7_union - side_a.c7_union));
        throw StageError(std::move(report));
    }

    struct Completion { Vertex v4, v5, v6, v8; };
    auto complete = [&] (const GadgetSide & side, Vertex v7, Vertex other7) {
        for (const auto & [v5, c8] : side.c8.at(v7)) {
            VertexSet hit = c8 & g.neighbours(other7);
            if (hit.empty())
                continue;
            Completion out{};
            out.v5 = v5;
            out.v8 = hit.first();
            out.v6 = (side.c6.at(v5) & g.neighbours(v7)).first();
            out.v4 = (side.c4 & g.neighbours(v5)).first();
            return out;
        }
        throw std::logic_error("paper_reservoir_graph: good edge without a completion");
    };
    const auto ca = complete(side_a, a7, b7);
    const auto cb = complete(side_b, b7, a7);
    const Vertex a3 = side_a.v3, b3 = side_b.v3;

    std::vector<Vertex> spine{ a1, a2, r, b1, b2, a3, ca.v4, ca.v5, ca.v6, a7, ca.v8, b3, cb.v4, cb.v5, cb.v6, b7, cb.v8 };
    VertexSet u = s - VertexSet::from(g.order(), spine);
    auto join = [&] (std::vector<Vertex> x, std::vector<Vertex> y, const std::string & label) {
        try {
            auto path = connect(g, x, y, u, cfg, delta / 4.0);
            std::vector<Vertex> interior(path.order.begin() + 2, path.order.end() - 2);
            for (auto v : interior)
                u.reset(v);
            return interior;
        }
        catch (const StageError & e) {
            auto report = e.report();
            report.stage = Stage::reservoir_path;
            report.outcome = label + ": " + report.outcome;
            throw StageError(std::move(report));
        }
        catch (const PreconditionError & e) {
            throw gadget_failure(label + ": " + e.what(), label);
        }
    };
    auto p1 = join({ b2, b1 }, { a3, ca.v4 }, "P1");
    auto p2 = join({ ca.v5, ca.v6 }, { b3, cb.v4 }, "P2");
    auto p3 = join({ cb.v5, cb.v6 }, { a7, ca.v8 }, "P3");

    ReservoirSegment seg;
    seg.reservoir_vertex = r;
    auto put = [] (std::vector<Vertex> & out, std::initializer_list<Vertex> vs) { out.insert(out.end(), vs); };
    auto put_range = [] (std::vector<Vertex> & out, const std::vector<Vertex> & vs, bool reversed) {
        if (reversed)
            out.insert(out.end(), vs.rbegin(), vs.rend());
        else
            out.insert(out.end(), vs.begin(), vs.end());
    };
    auto & w = seg.with_r;
    put(w, { a1, a2, r, b2, b1 });
    put_range(w, p1, false);
    put(w, { ca.v4, a3, ca.v5, ca.v6 });
    put_range(w, p2, false);
    put(w, { cb.v4, b3, cb.v5, cb.v6 });
    put_range(w, p3, false);
    put(w, { ca.v8, a7, b7, cb.v8 });
    auto & wo = seg.without_r;
    put(wo, { a1, a2, a3, ca.v4 });
    put_range(wo, p1, true);
    put(wo, { b1, b2, b3, cb.v4 });
    put_range(wo, p2, true);
    put(wo, { ca.v6, ca.v5, a7, ca.v8 });
    put_range(wo, p3, true);
    put(wo, { cb.v6, cb.v5, b7, cb.v8 });
    check_segment_ends(g, seg, s, rstar, cfg, p);
    return seg;
}

}

/**
 * A reservoir graph with reservoir vertex r and all other vertices in S
 * whose end tuples are (1/2,p)-connected to S and R*.
 *
 * k >= 3, or gadget = compact: 2k+1 vertices. k = 2 with the paper gadget:
 * 47 vertices (fewer when the internal connections are shorter).
 * Requires r outside S, deg_S(r) >= beta delta p n/8 and
 * |R*| >= delta^2 n/(200k), all with slack. delta defaults to cfg.delta.
 * The compact gadget prefers a start that directly continues join_after.
 */
inline auto build_reservoir_graph(const Graph & g, Vertex r, const VertexSet & s, const VertexSet & rstar,
        const EmbedConfig & cfg, std::optional<double> delta = std::nullopt, std::span<const Vertex> join_after = {})
    -> ReservoirSegment
{
    cfg.validate();
    const double d = delta ? *delta : cfg.delta;
    const double p = cfg.density(g);
    const double n = g.order();
    if (r < 0 || r >= g.order() || s.contains(r))
        throw PreconditionError("build_reservoir_graph: r must be a vertex outside S");
    const int deg = g.neighbours(r).intersection_count(s);
    if (deg < cfg.floor_threshold(cfg.beta * d * p * n / 8.0) - discrepancy_tolerance)
        throw PreconditionError("build_reservoir_graph: deg_S(r) = " + std::to_string(deg) + " is below beta delta p n/8");
    if (rstar.count() < cfg.floor_threshold(d * d * n / (200.0 * cfg.k)) - discrepancy_tolerance)
        throw PreconditionError("build_reservoir_graph: |R*| is below delta^2 n/(200k)");

    std::optional<StageError> last;
    for (int attempt = 0 ; attempt < cfg.max_retries ; ++attempt) {
        Rng rng(detail::mix_seed({ cfg.seed, static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(attempt) }));
        try {
            ReservoirSegment seg = (cfg.k == 2 && cfg.gadget == GadgetKind::paper)
                    ? detail::paper_reservoir_graph(g, r, s, rstar, cfg, d, rng, attempt)
                    : detail::compact_reservoir_graph(g, r, s, rstar, cfg, d, join_after);
            if (! segment_valid(g, seg, cfg.k))
                throw std::logic_error("build_reservoir_graph: assembled segment failed verification");
            return seg;
        }
        catch (const StageError & e) {
            last = e;
        }
    }
    throw *last;
}

/**
 * The reservoir path W-bypass: every segment whose reservoir vertex lies in
 * W is walked without it. The result is re-verified.
 */
inline auto bypass(const ReservoirPath & rp, const VertexSet & w) -> KPath
{
    if (! w.is_subset_of(rp.reservoir))
        throw PreconditionError("bypass: W is not a subset of the reservoir");
    const int k = rp.path.k;
    KPath out{ {}, k };
    out.order.reserve(rp.path.size());
    std::size_t at = 0;
    for (std::size_t i = 0 ; i < rp.order.size() ; ++i) {
        const auto & seg = rp.segments.at(rp.order[i]);
        out.order.insert(out.order.end(), rp.path.order.begin() + static_cast<std::ptrdiff_t>(at),
                rp.path.order.begin() + static_cast<std::ptrdiff_t>(rp.offsets[i]));
        const auto & walk = w.contains(seg.reservoir_vertex) ? seg.without_r : seg.with_r;
        out.order.insert(out.order.end(), walk.begin(), walk.end());
        at = rp.offsets[i] + seg.with_r.size();
    }
    out.order.insert(out.order.end(), rp.path.order.begin() + static_cast<std::ptrdiff_t>(at), rp.path.order.end());

    const int n = rp.reservoir.universe();
    if ((rp.graph && ! out.valid_in(*rp.graph)) || out.start_tuple() != rp.path.start_tuple() || out.end_tuple() != rp.path.end_tuple()
            || out.vertex_set(n) != (rp.path.vertex_set(n) - w))
        throw std::logic_error("bypass: result failed verification");
    return out;
}

namespace detail {

/**
 * The reservoir-path procedure: reservoir graphs around each r in R in
 * order of fewest unused S-neighbours, joined by connections inside the
 * unused part of S, with the first start tuple's witness set kept unused.
 * Errors carry `stage` and the segment index. `regime` turns on the
 * size checks on S' that are vacuous away from the asymptotic regime.
 * Without `conn_to_r` the end tuples need not be connected to R, and R*
 * is V(G).
 */
inline auto reservoir_procedure(const Graph & g, const VertexSet & r, const VertexSet & s, const EmbedConfig & cfg,
        double delta, Stage stage, bool regime, bool conn_to_r = true) -> ReservoirPath
{
    const int k = cfg.k;
    const int n = g.order();
    const double p = cfg.density(g);
    if (r.empty())
        throw PreconditionError("reservoir path: R is empty");
    const VertexSet rstar = conn_to_r && r.count() >= cfg.floor_threshold(delta * delta * n / (200.0 * k)) - discrepancy_tolerance
            ? r : g.all_vertices();

    auto restage = [&] (const StageError & e, int index) { return e.restaged(stage, index); };
    auto fail = [&] (std::string outcome, std::string set, int index) {
        auto report = stage_failure(stage, std::move(outcome), std::move(set));
        report.index = index;
        return StageError(std::move(report));
    };

    ReservoirPath rp;
    rp.path.k = k;
    rp.reservoir = r;
    rp.graph = &g;
    VertexSet used(n);
    VertexSet unused_r = r;
    const double need_deg = cfg.floor_threshold(cfg.beta * delta * p * n / 8.0);

    for (int i = 0 ; ! unused_r.empty() ; ++i) {
        const VertexSet sp = s - used;
        if (regime && i > 0 && sp.count() < cfg.floor_threshold(delta * n / 2.0 + 100.0 * k) - discrepancy_tolerance)
            throw fail("unused part of S fell below delta n/2 + 100k", "S'", i);
        // Fewest unused S-neighbours, ties to the smaller id.
        Vertex ri = -1;
        int best = n + 1;
        unused_r.for_each([&] (Vertex v) {
            int d = g.neighbours(v).intersection_count(sp);
            if (d < best) {
                best = d;
                ri = v;
            }
        });
        if (best < need_deg - discrepancy_tolerance) {
            auto e = fail("vertex " + std::to_string(ri) + " has too few unused neighbours in S", "N_S'(r)", i);
            throw e;
        }
        ReservoirSegment seg;
        try {
            auto tail = rp.path.order.empty() ? VertexTuple{} : rp.path.end_tuple();
            seg = build_reservoir_graph(g, ri, sp, rstar, cfg, delta, tail);
        }
        catch (const StageError & e) {
            throw restage(e, i);
        }
        catch (const PreconditionError & e) {
            throw fail(e.what(), "H", i);
        }
        const VertexSet hv = VertexSet::from(n, seg.with_r);

        if (i == 0) {
            try {
                auto wit = connectedness_witness(g, seg.start_tuple(k), s - hv, cfg.floor_threshold(1.0 / 8.0), p);
                used |= wit.y;
            }
            catch (const ConnectednessError & e) {
                throw fail(std::string("start tuple of the first reservoir graph: ") + e.what(), "Z", i);
            }
        }
        else {
            VertexSet u = sp - hv;
            try {
                auto c = connect(g, rp.path.end_tuple(), seg.start_tuple(k), u, cfg, delta / 4.0);
                rp.path.order.insert(rp.path.order.end(), c.order.begin() + k, c.order.end() - k);
                for (auto it = c.order.begin() + k ; it != c.order.end() - k ; ++it)
                    used.set(*it);
                rp.connectors.push_back(std::move(c));
            }
            catch (const StageError & e) {
                throw restage(e, i);
            }
            catch (const PreconditionError & e) {
                throw fail(std::string("connection: ") + e.what(), "C", i);
            }
        }
        used |= hv;
        unused_r.reset(ri);
        rp.order.push_back(ri);
        rp.offsets.push_back(rp.path.order.size());
        rp.path.order.insert(rp.path.order.end(), seg.with_r.begin(), seg.with_r.end());
        rp.segments.emplace(ri, std::move(seg));
    }
    if (! rp.path.valid_in(g))
        throw std::logic_error("reservoir path failed verification");
    return rp;
}

inline auto check_lemma_ranges(const Graph & g, const VertexSet & r, const VertexSet & s, const EmbedConfig & cfg,
        const char * who, const char * rname) -> void
{
    const double n = g.order();
    const double p = cfg.density(g);
    if (r.intersects(s))
        throw PreconditionError(std::string(who) + ": " + rname + " and S must be disjoint");
    if (r.empty())
        throw PreconditionError(std::string(who) + ": " + rname + " is empty");
    if (r.count() > cfg.ceiling_threshold(cfg.delta * n / (200.0 * cfg.k)) + discrepancy_tolerance)
        throw PreconditionError(std::string(who) + ": |" + rname + "| = " + std::to_string(r.count())
                + " exceeds delta n/(200k)");
    if (s.count() < cfg.floor_threshold(cfg.delta * n) - discrepancy_tolerance)
        throw PreconditionError(std::string(who) + ": |S| is below delta n");
    const double need = cfg.floor_threshold(cfg.beta * cfg.delta * p * n / 2.0);
    r.for_each([&] (Vertex v) {
        if (g.neighbours(v).intersection_count(s) < need - discrepancy_tolerance)
            throw PreconditionError(std::string(who) + ": vertex " + std::to_string(v)
                    + " has fewer than beta delta p n/2 neighbours in S");
    });
}

}

/**
 * A k-path in R and S containing R, at most 50k|R| vertices, whose ends are
 * (1/8,p)-connected to S - V(P) and, for large R, (1/2,p)-connected to R,
 * and which survives skipping any subset of R (see bypass).
 */
inline auto build_reservoir_path(const Graph & g, const VertexSet & r, const VertexSet & s, const EmbedConfig & cfg)
    -> ReservoirPath
{
    cfg.validate();
    detail::check_lemma_ranges(g, r, s, cfg, "build_reservoir_path", "R");
    auto rp = detail::reservoir_procedure(g, r, s, cfg, cfg.delta, Stage::reservoir_path, true);
    const int n = g.order();
    const double p = cfg.density(g);
    const int k = cfg.k;
    if (static_cast<long long>(rp.path.size()) > 50LL * k * r.count())
        throw std::logic_error("build_reservoir_path: path exceeds 50k|R| vertices");
    const VertexSet rest = s - rp.path.vertex_set(n);
    for (auto t : { rp.path.start_tuple(), rp.path.end_tuple() }) {
        if (first_failed_suffix(g, t, rest, cfg.floor_threshold(1.0 / 8.0), p) != 0)
            throw StageError(stage_failure(Stage::reservoir_path, "end tuple is not (1/8,p)-connected to S - V(P)", "S - V(P)"));
        if (r.count() >= cfg.floor_threshold(cfg.delta * cfg.delta * n / (200.0 * k)) - discrepancy_tolerance
                && first_failed_suffix(g, t, r, cfg.floor_threshold(0.5), p) != 0)
            throw StageError(stage_failure(Stage::reservoir_path, "end tuple is not (1/2,p)-connected to R", "R"));
    }
    return rp;
}

/**
 * A k-path in L and S covering L with at most 50k|L| vertices whose end
 * tuples lie in S and are (1/8,p)-connected to S - V(P). This is the
 * reservoir-path procedure with R := L.
 */
inline auto cover_leftover(const Graph & g, const VertexSet & l, const VertexSet & s, const EmbedConfig & cfg) -> KPath
{
    cfg.validate();
    detail::check_lemma_ranges(g, l, s, cfg, "cover_leftover", "L");
    auto rp = detail::reservoir_procedure(g, l, s, cfg, cfg.delta, Stage::covering, true, false);
    const int n = g.order();
    const double p = cfg.density(g);
    if (static_cast<long long>(rp.path.size()) > 50LL * cfg.k * l.count())
        throw std::logic_error("cover_leftover: path exceeds 50k|L| vertices");
    const VertexSet rest = s - rp.path.vertex_set(n);
    for (auto t : { rp.path.start_tuple(), rp.path.end_tuple() })
        if (first_failed_suffix(g, t, rest, cfg.floor_threshold(1.0 / 8.0), p) != 0)
            throw StageError(stage_failure(Stage::covering, "end tuple is not (1/8,p)-connected to S - V(P)", "S - V(P)"));
    return rp.path;
}

}

#endif
