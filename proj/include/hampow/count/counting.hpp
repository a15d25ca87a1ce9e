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


#ifndef HAMPOW_COUNT_COUNTING_HPP
#define HAMPOW_COUNT_COUNTING_HPP

#include <hampow/embed/config.hpp>
#include <hampow/embed/extend.hpp>
#include <hampow/embed/pipeline.hpp>
#include <hampow/graph/graph.hpp>
#include <hampow/pseudo/connectedness.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hampow {

struct CountConfig
{
    double nu = 0.5;
    /// epsilon(n) = epsilon_scale / ln^2 n.
    double epsilon_scale = 1.0;
    EmbedConfig base;

    auto validate() const -> void
    {
        base.validate();
        if (! (nu > 0.0 && nu < 1.0))
            throw PreconditionError("CountConfig: nu must lie in (0, 1)");
        if (! (epsilon_scale > 0.0))
            throw PreconditionError("CountConfig: epsilon scale must be positive");
    }

    /// C = 2^{k+23} k^4 / nu.
    auto C() const -> double
    {
        const double k = base.k;
        return std::pow(2.0, k + 23.0) * k * k * k * k / nu;
    }

    auto epsilon(int n) const -> double
    {
        const double l = std::log(static_cast<double>(n));
        return n < 3 ? 1.0 : std::min(1.0, epsilon_scale / (l * l));
    }

    /// Typicality factor 1 - nu/(2k).
    auto typical() const -> double { return 1.0 - nu / (2.0 * base.k); }

    /// n/(200k ln n)^2: the least |L| and |R| the counting step accepts.
    auto set_floor(int n) const -> double
    {
        const double l = n < 3 ? 1.0 : std::log(static_cast<double>(n));
        const double m = 200.0 * base.k * l;
        return base.floor_threshold(n / (m * m));
    }

    /// n/ln^2 n: the smaller end of the reservoir size range.
    auto reservoir_floor(int n) const -> double
    {
        const double l = n < 3 ? 1.0 : std::log(static_cast<double>(n));
        return n / (l * l);
    }
};

namespace detail {

    inline auto degree_floor_loose(const CountConfig & cc, double p, int length, int size) -> double
    {
        return cc.base.floor_threshold(connectedness_quota(1.0 / 8.0, p, length, size));
    }

    inline auto degree_floor_tight(const CountConfig & cc, double p, int length, int size) -> double
    {
        return cc.base.floor_threshold(std::pow(cc.typical() * p, length) * size);
    }

    // Common degree of t[from..] into x; `from` is 0-based.
    inline auto suffix_degree(const Graph & g, std::span<const Vertex> t, std::size_t from, const VertexSet & x) -> int
    {
        return common_degree(g, t.subspan(from), x);
    }

    /**
     * Conclusions (a)-(c) for a candidate x. Degrees are taken into L - x,
     * the leftover of the next step, and (c) runs over 1 <= i <= k only:
     * those are exactly the hypotheses the next step needs.
     */
    inline auto counting_conclusions_hold(const Graph & g, std::span<const Vertex> next, const VertexSet & rest,
            const VertexSet * r, int j, const CountConfig & cc, double p) -> std::pair<bool, bool>
    {
        const int k = cc.base.k;
        bool ok_r = ! r || r->empty() || is_connected_tuple(g, next, *r, cc.base.floor_threshold(1.0 / 6.0), p);
        bool ok_l = true;
        const int size = rest.count();
        for (int i = 1 ; i <= k && ok_l ; ++i) {
            const int length = k - i + 1;
            const double need = i <= j - 1 ? degree_floor_loose(cc, p, length, size) : degree_floor_tight(cc, p, length, size);
            ok_l = suffix_degree(g, next, static_cast<std::size_t>(i - 1), rest) >= need - discrepancy_tolerance;
        }
        return { ok_l, ok_r };
    }

    /// Every x in N_L(t) meeting the conclusions, best first by deg_{L-x} of the new tuple, then id.
    inline auto counting_candidates(const Graph & g, std::span<const Vertex> t, const VertexSet & l, const VertexSet * r,
            int j, const CountConfig & cc, double p, ExtensionScan * scan = nullptr) -> std::vector<std::pair<int, Vertex>>
    {
        std::vector<std::pair<int, Vertex>> out;
        VertexSet cand = common_neighbourhood(g, t, l);
        if (scan)
            scan->neighbourhood = cand.count();
        VertexTuple next(t.begin() + 1, t.end());
        next.push_back(-1);
        VertexSet rest = l;
        cand.for_each([&] (Vertex x) {
            next.back() = x;
            rest.reset(x);
            auto [ok_l, ok_r] = counting_conclusions_hold(g, next, rest, r, j, cc, p);
            if (scan) {
                scan->fail_l += ! ok_l;
                scan->fail_r += ! ok_r;
            }
            if (ok_l && ok_r)
                out.emplace_back(-common_degree(g, next, rest), x);
            rest.set(x);
        });
        std::sort(out.begin(), out.end());
        for (auto & [d, x] : out)
            d = -d;
        return out;
    }

}

/**
 * The first hypothesis of the counting step that t fails for phase j, as
 * (clause, i), with i = 0 for the size and disjointness clauses.
 */
inline auto counting_hypothesis_violation(const Graph & g, std::span<const Vertex> t, const VertexSet & l,
        const VertexSet & r, int j, const CountConfig & cc) -> std::optional<std::pair<std::string, int>>
{
    const int k = cc.base.k;
    const double p = cc.base.density(g);
    if (static_cast<int>(t.size()) != k || ! is_clique(g, t))
        return std::pair{ std::string("t is not a k-clique"), 0 };
    if (l.intersects(r))
        return std::pair{ std::string("L and R intersect"), 0 };
    const double floor = cc.set_floor(g.order());
    if (l.count() < floor - discrepancy_tolerance)
        return std::pair{ std::string("|L| below n/(200k log n)^2"), 0 };
    if (! r.empty() && r.count() < floor - discrepancy_tolerance)
        return std::pair{ std::string("|R| below n/(200k log n)^2"), 0 };
    if (! r.empty()) {
        int failed = first_failed_suffix(g, t, r, cc.base.floor_threshold(1.0 / 8.0), p);
        if (failed != 0)
            return std::pair{ std::string("(i)"), failed };
    }
    for (int i = 1 ; i <= k ; ++i) {
        const int length = k - i + 1;
        const bool loose = i <= j;
        const double need = loose ? detail::degree_floor_loose(cc, p, length, l.count())
                : detail::degree_floor_tight(cc, p, length, l.count());
        if (detail::suffix_degree(g, t, static_cast<std::size_t>(i - 1), l) < need - discrepancy_tolerance)
            return std::pair{ std::string(loose ? "(ii)" : "(iii)"), i };
    }
    return std::nullopt;
}

/**
 * The counting extension step for phase j in 0..k: every vertex x of
 * N_L(t) such that (t_2..t_k, x) is (1/6,p)-connected to R, its suffixes
 * of index below j keep the (1/8,p) degree floors into L - x, and the rest
 * keep ((1 - nu/2k) p)^{length} |L - x|. Thresholds carry the base slack.
 */
inline auto extend_step_counting(const Graph & g, std::span<const Vertex> t, const VertexSet & l, const VertexSet & r,
        int j, const CountConfig & cc) -> VertexSet
{
    cc.validate();
    if (j < 0 || j > cc.base.k)
        throw PreconditionError("extend_step_counting: j must lie in 0..k");
    if (auto bad = counting_hypothesis_violation(g, t, l, r, j, cc))
        throw PreconditionError("extend_step_counting: hypothesis " + bad->first
                + (bad->second > 0 ? " fails at i = " + std::to_string(bad->second) : std::string()));
    VertexSet out(g.order());
    for (auto [d, x] : detail::counting_candidates(g, t, l, r.empty() ? nullptr : &r, j, cc, cc.base.density(g)))
        out.set(x);
    return out;
}

/// The phase index of the step that adds the (depth+1)-th vertex.
inline auto counting_phase(int depth, int k) -> int
{
    return std::max(k - depth, 0);
}

struct CountStep
{
    int j = 0;
    /// deg_L(t) before the step.
    int degree = 0;
    int candidates = 0;
};

struct CountAccumulator
{
    /// Sum of ln |candidates| over the extension steps.
    double log_count = 0.0;
    /// The same sum restricted to steps with j = 0.
    double log_count_greedy = 0.0;
    /// Sum of ln((1 - nu/2k) deg_L(t)) over the steps where that is positive.
    double log_floor = 0.0;
    int steps = 0;
    /// Steps with fewer than (1 - nu/2k) deg_L(t) candidates.
    int shortfalls = 0;
    std::vector<CountStep> per_step;
    std::vector<Vertex> witness;
    int reservoir_size = 0;
    int leftover = 0;
    double epsilon = 0.0;
    std::vector<StageReport> trace;

    auto bound() const -> double { return std::exp(log_count); }
};

/**
 * The construction with the counting extension step in place of the greedy
 * one: phases j = k..1 for the first k steps, j = 0 afterwards, run until
 * |L| drops below n/(200k log n)^2. Returns the product of the candidate
 * counts along the chosen extension (in log space) and the witness cycle.
 *
 * The reservoir has n/ln^2 n vertices unless the base config fixes a size.
 */
inline auto count_lower_bound(const Graph & g, const CountConfig & cc) -> CountAccumulator
{
    cc.validate();
    const int n = g.order();
    const int k = cc.base.k;
    const double p = cc.base.density(g);
    EmbedConfig cfg = cc.base;
    if (! cfg.reservoir_size)
        cfg.reservoir_size = std::min(n, quota_count(cc.reservoir_floor(n)));

    CountAccumulator acc;
    acc.epsilon = cc.epsilon(n);
    std::vector<Vertex> start;
    VertexSet l0(n);
    VertexSet r0(n);
    std::vector<Vertex> added;

    detail::ExtensionPhase phase = [&] (const std::vector<Vertex> & path, const VertexSet & l, const VertexSet * r,
            int & target) -> detail::ExtensionRun {
        start = path;
        l0 = l;
        r0 = r ? *r : g.empty_set();
        if (! cc.base.leftover_size)
            target = std::max(quota_count(cc.set_floor(n)) - 1, 0);
        std::span<const Vertex> t(path.end() - k, path.end());
        if (auto bad = counting_hypothesis_violation(g, t, l, r0, k, cc)) {
            auto rep = stage_failure(Stage::extension, "counting step hypothesis " + bad->first + " fails", "L");
            rep.index = bad->second;
            throw StageError(std::move(rep));
        }
        auto run = detail::extension_search_with(path, k, l, target, cfg.extension_budget,
                [&] (std::span<const Vertex> tail, const VertexSet & cur, int depth, ExtensionScan * scan) {
                    return detail::counting_candidates(g, tail, cur, r, counting_phase(depth, k), cc, p, scan);
                });
        added = run.added;
        return run;
    };

    auto cycle = detail::run_pipeline(g, cfg, acc.trace, phase);
    acc.witness = std::move(cycle);
    acc.reservoir_size = r0.count();

    std::vector<Vertex> tail(start.end() - k, start.end());
    VertexSet l = l0;
    for (std::size_t s = 0 ; s < added.size() ; ++s) {
        const int j = counting_phase(static_cast<int>(s), k);
        std::span<const Vertex> t(tail.end() - k, tail.end());
        if (auto bad = counting_hypothesis_violation(g, t, l, r0, j, cc)) {
            auto rep = stage_failure(Stage::extension, "counting step hypothesis " + bad->first + " fails mid-run", "L");
            rep.index = static_cast<int>(s);
            throw StageError(std::move(rep));
        }
        CountStep step;
        step.j = j;
        step.degree = common_degree(g, t, l);
        step.candidates = static_cast<int>(detail::counting_candidates(g, t, l, r0.empty() ? nullptr : &r0, j, cc, p).size());
        acc.log_count += std::log(static_cast<double>(step.candidates));
        if (j == 0)
            acc.log_count_greedy += std::log(static_cast<double>(step.candidates));
        const double guaranteed = cc.typical() * step.degree;
        if (guaranteed > 0.0)
            acc.log_floor += std::log(guaranteed);
        if (step.candidates < guaranteed - discrepancy_tolerance)
            ++acc.shortfalls;
        acc.per_step.push_back(step);
        tail.push_back(added[s]);
        l.reset(added[s]);
    }
    acc.steps = static_cast<int>(added.size());
    acc.leftover = l.count();
    return acc;
}

}

#endif
