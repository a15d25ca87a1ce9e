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

#ifndef HAMPOW_PSEUDO_DISCREPANCY_HPP
#define HAMPOW_PSEUDO_DISCREPANCY_HPP

#include <hampow/errors.hpp>
#include <hampow/graph/graph.hpp>
#include <hampow/pseudo/params.hpp>
#include <hampow/rng.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace hampow {

inline constexpr int exact_check_limit = 18;
inline constexpr long long default_sample_budget = 10000;

enum class CheckMode
{
    exact,
    sampled
};

namespace detail {
    /**
     * Exhaustive search over disjoint (X,Y). For each X with |X| >= min_x,
     * and each size s >= min_y, the extreme values of e(X,Y) over |Y| = s
     * come from the s largest or s smallest deg_X among V \ X, so only
     * those two Y per (X,s) need testing. `violates(x, s, e)` decides.
     */
    template <typename Violates>
    auto exhaustive_pair_search(const Graph & g, int min_x, int min_y, Violates && violates,
            const std::function<double (int, int)> & bound) -> Verdict
    {
        const int n = g.order();
        if (n > exact_check_limit)
            throw PreconditionError("exact check needs n <= " + std::to_string(exact_check_limit)
                    + " (got n=" + std::to_string(n) + "); use sampled mode");
        std::vector<std::uint32_t> rows(static_cast<std::size_t>(n), 0);
        for (int v = 0 ; v < n ; ++v)
            g.neighbours(v).for_each([&] (Vertex u) { rows[static_cast<std::size_t>(v)] |= 1u << u; });

        min_x = std::max(min_x, 1);
        min_y = std::max(min_y, 1);
        std::vector<std::pair<int, int>> outside;
        outside.reserve(static_cast<std::size_t>(n));
        const std::uint32_t all = n == 32 ? ~0u : ((1u << n) - 1);
        for (std::uint32_t xm = 1 ; xm <= all && xm != 0 ; ++xm) {
            int xs = std::popcount(xm);
            if (xs < min_x || n - xs < min_y)
                continue;
            outside.clear();
            for (int v = 0 ; v < n ; ++v)
                if (! ((xm >> v) & 1))
                    outside.emplace_back(std::popcount(rows[static_cast<std::size_t>(v)] & xm), v);
            std::sort(outside.begin(), outside.end());
            const auto m = static_cast<int>(outside.size());
            long long low = 0, high = 0;
            for (int s = 1 ; s <= m ; ++s) {
                low += outside[static_cast<std::size_t>(s - 1)].first;
                high += outside[static_cast<std::size_t>(m - s)].first;
                if (s < min_y)
                    continue;
                for (int side = 0 ; side < 2 ; ++side) {
                    long long e = side == 0 ? high : low;
                    if (violates(xs, s, e)) {
                        Verdict v;
                        v.status = VerdictStatus::violated;
                        DiscrepancyWitness w{ VertexSet(n), VertexSet(n), e, 0.0, bound(xs, s) };
                        for (int u = 0 ; u < n ; ++u)
                            if ((xm >> u) & 1)
                                w.x.set(u);
                        for (int i = 0 ; i < s ; ++i)
                            w.y.set(outside[static_cast<std::size_t>(side == 0 ? m - 1 - i : i)].second);
                        v.witness = w;
                        return v;
                    }
                }
            }
        }
        Verdict v;
        v.status = VerdictStatus::satisfied;
        return v;
    }

    /**
     * Randomized local search for a disjoint pair maximizing `score(|X|,|Y|,e)`;
     * a positive score is a violation. Each move reassigns one vertex among
     * X, Y and neither; non-worsening moves are kept, and the search restarts
     * after 4n consecutive rejected moves.
     */
    template <typename Score>
    auto sampled_pair_search(const Graph & g, long long budget, std::uint64_t seed, int min_x, int min_y,
            Score && score) -> std::optional<DiscrepancyWitness>
    {
        const int n = g.order();
        if (n < 2)
            return std::nullopt;
        Rng rng(seed);
        min_x = std::max(min_x, 1);
        min_y = std::max(min_y, 1);
        if (min_x + min_y > n)
            return std::nullopt;

        std::vector<int> side(static_cast<std::size_t>(n));
        VertexSet xs(n), ys(n);
        long long e = 0;
        auto restart = [&] {
            xs.clear();
            ys.clear();
            std::vector<Vertex> perm(static_cast<std::size_t>(n));
            std::iota(perm.begin(), perm.end(), 0);
            shuffle(perm, rng);
            int a = min_x + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - min_x - min_y + 1)));
            int b = min_y + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - a - min_y + 1)));
            for (int i = 0 ; i < n ; ++i) {
                auto v = perm[static_cast<std::size_t>(i)];
                side[static_cast<std::size_t>(v)] = i < a ? 0 : i < a + b ? 1 : 2;
                if (i < a)
                    xs.set(v);
                else if (i < a + b)
                    ys.set(v);
            }
            e = edges_between(g, xs, ys);
        };
        restart();
        double current = score(xs.count(), ys.count(), e);
        if (current > 0.0)
            return DiscrepancyWitness{ xs, ys, e, 0.0, 0.0 };
        long long stale = 0;
        for (long long move = 0 ; move < budget ; ++move) {
            auto v = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
            int from = side[static_cast<std::size_t>(v)];
            int to = (from + 1 + static_cast<int>(rng.below(2))) % 3;
            int cx = xs.count(), cy = ys.count();
            long long ne = e;
            int dx = g.neighbours(v).intersection_count(xs), dy = g.neighbours(v).intersection_count(ys);
            if (from == 0) { --cx; ne -= dy; }
            if (from == 1) { --cy; ne -= dx; }
            if (to == 0) { ++cx; ne += dy; }
            if (to == 1) { ++cy; ne += dx; }
            if (cx < min_x || cy < min_y)
                continue;
            double candidate = score(cx, cy, ne);
            if (candidate >= current) {
                if (from == 0) xs.reset(v);
                if (from == 1) ys.reset(v);
                if (to == 0) xs.set(v);
                if (to == 1) ys.set(v);
                side[static_cast<std::size_t>(v)] = to;
                e = ne;
                stale = candidate > current ? 0 : stale + 1;
                current = candidate;
                if (current > 0.0)
                    return DiscrepancyWitness{ xs, ys, e, 0.0, 0.0 };
            }
            else if (++stale > 4LL * n) {
                restart();
                current = score(xs.count(), ys.count(), e);
                stale = 0;
                if (current > 0.0)
                    return DiscrepancyWitness{ xs, ys, e, 0.0, 0.0 };
            }
        }
        return std::nullopt;
    }
}

/**
 * (p,beta)-jumbledness: |e(A,B) - p|A||B|| <= beta sqrt(|A||B|) for all
 * disjoint A, B. Exact mode enumerates (n <= 18); sampled mode is a
 * falsifier returning violated or undetermined.
 */
inline auto check_jumbled(const Graph & g, double p, double beta, CheckMode mode = CheckMode::exact,
        long long budget = default_sample_budget, std::uint64_t seed = 1) -> Verdict
{
    auto bound = [&] (int a, int b) { return beta * std::sqrt(static_cast<double>(a) * b); };
    if (mode == CheckMode::exact) {
        auto v = detail::exhaustive_pair_search(g, 1, 1, [&] (int a, int b, long long e) {
            return std::abs(static_cast<double>(e) - p * a * b) > bound(a, b) + discrepancy_tolerance;
        }, bound);
        if (v.witness)
            v.witness->expected = p * v.witness->x.count() * v.witness->y.count();
        return v;
    }
    auto w = detail::sampled_pair_search(g, budget, seed, 1, 1, [&] (int a, int b, long long e) {
        return std::abs(static_cast<double>(e) - p * a * b) - bound(a, b) - discrepancy_tolerance;
    });
    Verdict v;
    if (w) {
        v.status = VerdictStatus::violated;
        w->expected = p * w->x.count() * w->y.count();
        w->bound = bound(w->x.count(), w->y.count());
        v.witness = w;
    }
    else
        v.detail = "no violation found within budget";
    return v;
}

/// Exhaustive (eps,p,k,l)-pseudorandomness check for n <= 18.
inline auto check_pseudorandom_exact(const Graph & g, const PseudoParams & params) -> Verdict
{
    params.validate();
    const int n = g.order();
    auto bound = [&] (int a, int b) { return params.epsilon * params.p * a * b; };
    auto v = detail::exhaustive_pair_search(g, params.min_x(n), params.min_y(n), [&] (int a, int b, long long e) {
        return std::abs(static_cast<double>(e) - params.p * a * b) >= bound(a, b) - discrepancy_tolerance;
    }, bound);
    if (v.witness)
        v.witness->expected = params.p * v.witness->x.count() * v.witness->y.count();
    return v;
}

/// Sampled falsifier for (eps,p,k,l)-pseudorandomness on graphs of any size.
inline auto check_pseudorandom_sampled(const Graph & g, const PseudoParams & params,
        long long budget = default_sample_budget, std::uint64_t seed = 1) -> Verdict
{
    params.validate();
    const int n = g.order();
    auto w = detail::sampled_pair_search(g, budget, seed, params.min_x(n), params.min_y(n), [&] (int a, int b, long long e) {
        double rel = params.epsilon * params.p * a * b;
        return std::abs(static_cast<double>(e) - params.p * a * b) - rel + discrepancy_tolerance;
    });
    Verdict v;
    if (w) {
        v.status = VerdictStatus::violated;
        w->expected = params.p * w->x.count() * w->y.count();
        w->bound = params.epsilon * params.p * w->x.count() * w->y.count();
        v.witness = w;
    }
    else
        v.detail = "no violation found within budget";
    return v;
}

inline auto check_pseudorandom(const Graph & g, const PseudoParams & params, CheckMode mode,
        long long budget = default_sample_budget, std::uint64_t seed = 1) -> Verdict
{
    return mode == CheckMode::exact ? check_pseudorandom_exact(g, params) : check_pseudorandom_sampled(g, params, budget, seed);
}

}

#endif
