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

#ifndef HAMPOW_EMBED_CONNECT_HPP
#define HAMPOW_EMBED_CONNECT_HPP

#include <hampow/embed/cliques.hpp>
#include <hampow/embed/config.hpp>
#include <hampow/pseudo/connectedness.hpp>
#include <hampow/rng.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hampow {

/// Interior vertices used by the layered construction: 10 for k = 2, 3k otherwise.
inline auto connect_interior_size(int k) -> int
{
    return k == 2 ? 10 : 3 * k;
}

/**
 * Carved candidate sets for one connection attempt. from_x lists the sets
 * a path leaving x passes through (private sets, then the shared ones);
 * from_y does the same for y, meeting the shared sets in reverse.
 */
struct ConnectScaffold
{
    int k = 0;
    int private_count = 0;
    std::vector<VertexSet> from_x;
    std::vector<VertexSet> from_y;
    std::vector<std::string> x_names;
    std::vector<std::string> y_names;
};

namespace detail {

/// Largest rho <= 1 for which t is (rho,p)-connected to U; 0 if t is not a clique avoiding U.
inline auto measured_connectedness(const Graph & g, std::span<const Vertex> t, const VertexSet & u, double p) -> double
{
    if (t.empty() || u.empty() || first_failed_suffix(g, t, u, 0.0, p) == -1)
        return 0.0;
    const auto l = static_cast<int>(t.size());
    const double us = u.count();
    double rho = 1.0;
    VertexSet common = u;
    for (int i = l ; i >= 1 ; --i) {
        common &= g.neighbours(t[static_cast<std::size_t>(i - 1)]);
        rho = std::min(rho, common.count() / (std::pow(p / 2.0, l - i + 1) * us));
    }
    return rho;
}

inline auto shuffled(const VertexSet & s, Rng & rng) -> std::vector<Vertex>
{
    auto v = s.to_vector();
    shuffle(v, rng);
    return v;
}

/// Two disjoint sets of up to `target` vertices from two pools; exclusive vertices first, shared ones alternate.
inline auto carve_pair(const VertexSet & pool_a, const VertexSet & pool_b, int target, Rng & rng)
    -> std::pair<VertexSet, VertexSet>
{
    const int n = pool_a.universe();
    VertexSet a(n), b(n);
    int ca = 0, cb = 0;
    for (auto v : shuffled(pool_a - pool_b, rng))
        if (ca < target) {
            a.set(v);
            ++ca;
        }
    for (auto v : shuffled(pool_b - pool_a, rng))
        if (cb < target) {
            b.set(v);
            ++cb;
        }
    bool turn_a = true;
    for (auto v : shuffled(pool_a & pool_b, rng)) {
        if (ca >= target && cb >= target)
            break;
        if ((turn_a && ca < target) || cb >= target) {
            a.set(v);
            ++ca;
        }
        else {
            b.set(v);
            ++cb;
        }
        turn_a = ! turn_a;
    }
    return { a, b };
}

/// `count` disjoint sets from one pool, each min(target, |pool| / count).
inline auto carve_uniform(const VertexSet & pool, int count, int target, Rng & rng) -> std::vector<VertexSet>
{
    auto order = shuffled(pool, rng);
    const int each = std::min<int>(target, static_cast<int>(order.size()) / std::max(count, 1));
    std::vector<VertexSet> result(static_cast<std::size_t>(count), VertexSet(pool.universe()));
    std::size_t next = 0;
    for (auto & s : result)
        for (int i = 0 ; i < each ; ++i)
            s.set(order[next++]);
    return result;
}

inline auto connection_failure(std::string outcome, std::string empty_set = {}) -> StageError
{
    return StageError(stage_failure(Stage::connection_1, std::move(outcome), std::move(empty_set)));
}

}

/**
 * Carves the candidate sets for one layered attempt inside U.
 *
 * k = 2: X3 in N_U(x1,x2) and X4 in N_U(x2) of sizes rho p^2|U|/16 and
 * rho p|U|/16, then X5, X6, X7 of size |U|/10, and primed copies for y.
 * k > 2: U_i in N_U(x_i..x_k) of size rho^2 (p/2)^{k-i+1} n/(3k) for i <= k,
 * shared U_{k+1..2k} of size rho n/(3k), and U'_i for y.
 * Targets are divided by slack and capped by an equal share of U; a set
 * smaller than slack times its proof size aborts the attempt.
 */
inline auto build_connect_scaffold(const Graph & g, std::span<const Vertex> x, std::span<const Vertex> y,
        const VertexSet & u, double p, double rho, const EmbedConfig & cfg, Rng & rng) -> ConnectScaffold
{
    const int k = cfg.k;
    const double n = g.order();
    const double us = u.count();
    ConnectScaffold sc;
    sc.k = k;
    sc.private_count = k == 2 ? 4 : k;

    std::vector<double> small(static_cast<std::size_t>(k));
    double large;
    int large_count;
    if (k == 2) {
        small[0] = rho * p * p * us / 16.0;
        small[1] = rho * p * us / 16.0;
        large = us / 10.0;
        large_count = 6;
    }
    else {
        for (int i = 1 ; i <= k ; ++i)
            small[static_cast<std::size_t>(i - 1)] = rho * rho * std::pow(p / 2.0, k - i + 1) * n / (3.0 * k);
        large = rho * n / (3.0 * k);
        large_count = k;
    }

    auto name = [&] (int index, bool primed) {
        std::string s = k == 2 ? "X" + std::to_string(index + 2) : "U" + std::to_string(index);
        return primed ? s + "'" : s;
    };
    auto check = [&] (const VertexSet & s, double proof, const std::string & label) {
        if (s.count() < std::max(1, quota_count(cfg.floor_threshold(proof))))
            throw detail::connection_failure("carved set " + label + " has " + std::to_string(s.count())
                    + " vertices, below its floor", label);
    };

    // No carved set may take more than an equal share of U, whatever the slack.
    const int share = u.count() / (2 * k + large_count);
    VertexSet avail = u;
    std::vector<VertexSet> xs, ys;
    for (int i = 1 ; i <= k ; ++i) {
        auto suffix_x = x.subspan(static_cast<std::size_t>(i - 1));
        auto suffix_y = y.subspan(static_cast<std::size_t>(i - 1));
        double proof = small[static_cast<std::size_t>(i - 1)];
        auto [a, b] = detail::carve_pair(common_neighbourhood(g, suffix_x, avail),
                common_neighbourhood(g, suffix_y, avail), std::min(share, quota_count(cfg.ceiling_threshold(proof))), rng);
        check(a, proof, name(i, false));
        check(b, proof, name(i, true));
        avail -= a;
        avail -= b;
        xs.push_back(std::move(a));
        ys.push_back(std::move(b));
    }
    auto big = detail::carve_uniform(avail, large_count, quota_count(cfg.ceiling_threshold(large)), rng);
    for (std::size_t i = 0 ; i < big.size() ; ++i)
        check(big[i], large, k == 2 ? "X" + std::to_string(5 + i % 3) + (i >= 3 ? "'" : "")
                : "U" + std::to_string(k + 1 + static_cast<int>(i)));

    if (k == 2) {
        // big = X5 X6 X7 X5' X6' X7'; the shared pair is (X7, X7').
        sc.from_x = { xs[0], xs[1], big[0], big[1], big[2], big[5] };
        sc.from_y = { ys[0], ys[1], big[3], big[4], big[5], big[2] };
        sc.x_names = { "X3", "X4", "X5", "X6", "X7", "X7'" };
        sc.y_names = { "X3'", "X4'", "X5'", "X6'", "X7'", "X7" };
    }
    else {
        sc.from_x = xs;
        sc.from_y = ys;
        for (int i = 1 ; i <= k ; ++i) {
            sc.x_names.push_back(name(i, false));
            sc.y_names.push_back(name(i, true));
        }
        for (int i = 0 ; i < k ; ++i) {
            sc.from_x.push_back(big[static_cast<std::size_t>(i)]);
            sc.x_names.push_back("U" + std::to_string(k + 1 + i));
            sc.from_y.push_back(big[static_cast<std::size_t>(k - 1 - i)]);
            sc.y_names.push_back("U" + std::to_string(2 * k - i));
        }
    }
    return sc;
}

/**
 * Runs the good-window search from both ends of a scaffold and joins them on
 * a window good for x whose reversal is good for y. Returns the interior.
 */
inline auto layered_connection(const Graph & g, std::span<const Vertex> x, std::span<const Vertex> y,
        const ConnectScaffold & sc) -> std::vector<Vertex>
{
    const int k = sc.k;
    auto lx = good_window_dp(g, x, sc.from_x, k);
    auto ly = good_window_dp(g, y, sc.from_y, k);
    auto first_empty = [&] (const std::vector<WindowLayer> & layers, const std::vector<std::string> & names) -> int {
        for (std::size_t i = 0 ; i < layers.size() ; ++i)
            if (layers[i].good.empty())
                return static_cast<int>(i);
        (void) names;
        return -1;
    };
    auto window_name = [&] (const std::vector<std::string> & names, int layer) {
        std::string s = "good(";
        for (int j = 0 ; j < k ; ++j)
            s += (j ? "," : "") + names[static_cast<std::size_t>(layer + j)];
        return s + ")";
    };
    auto report_sizes = [&] (StageReport & r) {
        for (std::size_t i = 0 ; i < sc.from_x.size() ; ++i)
            r.add("|" + sc.x_names[i] + "|", sc.from_x[i].count());
        for (std::size_t i = 0 ; i < static_cast<std::size_t>(sc.private_count) ; ++i)
            r.add("|" + sc.y_names[i] + "|", sc.from_y[i].count());
        for (std::size_t i = 0 ; i < lx.size() ; ++i)
            r.add(window_name(sc.x_names, static_cast<int>(i)), static_cast<long long>(lx[i].good.size()));
        for (std::size_t i = 0 ; i < ly.size() ; ++i)
            r.add(window_name(sc.y_names, static_cast<int>(i)), static_cast<long long>(ly[i].good.size()));
    };
    for (auto side : { 0, 1 }) {
        const auto & layers = side == 0 ? lx : ly;
        const auto & names = side == 0 ? sc.x_names : sc.y_names;
        int e = first_empty(layers, names);
        if (e >= 0) {
            auto label = window_name(names, e);
            auto r = stage_failure(Stage::connection_1, "no good window " + label, label);
            report_sizes(r);
            throw StageError(std::move(r));
        }
    }
    const int last = static_cast<int>(lx.size()) - 1;
    for (const auto & [w, pred] : lx[static_cast<std::size_t>(last)].good) {
        (void) pred;
        VertexTuple rev(w.rbegin(), w.rend());
        if (! ly[static_cast<std::size_t>(last)].good.count(rev))
            continue;
        auto sx = trace_window_path(lx, last, w);
        auto sy = trace_window_path(ly, last, rev);
        std::vector<Vertex> interior = sx;
        for (int i = sc.private_count - 1 ; i >= 0 ; --i)
            interior.push_back(sy[static_cast<std::size_t>(i)]);
        return interior;
    }
    auto label = "doubly-" + window_name(sc.x_names, last);
    auto r = stage_failure(Stage::connection_1, "no window good from both ends", label);
    report_sizes(r);
    throw StageError(std::move(r));
}

/**
 * Smallest-first search for an interior z_1..z_m in U with x, z, reversed y a
 * k-path. z_j must see the k vertices before it and every y_i with
 * i >= m + 1 - j. Returns nullopt when the budget runs out or no interior of
 * at most max_interior vertices exists.
 */
inline auto shortest_connection(const Graph & g, std::span<const Vertex> x, std::span<const Vertex> y,
        const VertexSet & u, int max_interior, long long budget) -> std::optional<std::vector<Vertex>>
{
    const auto k = static_cast<int>(x.size());
    long long nodes = 0;
    for (int m = 0 ; m <= max_interior ; ++m) {
        // Direct x-y adjacencies needed when the interior is shorter than k.
        bool direct_ok = true;
        for (int i = 1 ; i <= k && direct_ok ; ++i)
            for (int l = 1 ; l <= k ; ++l)
                if (i + l >= k + m + 1 && ! g.adjacent(x[static_cast<std::size_t>(i - 1)], y[static_cast<std::size_t>(l - 1)])) {
                    direct_ok = false;
                    break;
                }
        if (! direct_ok)
            continue;
        std::vector<VertexSet> req(static_cast<std::size_t>(m + 1), u);
        for (int j = 1 ; j <= m ; ++j)
            for (int i = std::max(1, m + 1 - j) ; i <= k ; ++i)
                req[static_cast<std::size_t>(j)] &= g.neighbours(y[static_cast<std::size_t>(i - 1)]);

        std::vector<Vertex> seq(x.begin(), x.end());
        VertexSet avail = u;
        bool exhausted = false;
        auto dfs = [&] (auto && self, int j) -> bool {
            if (j > m)
                return true;
            VertexSet cand = req[static_cast<std::size_t>(j)] & avail;
            for (std::size_t t = seq.size() - static_cast<std::size_t>(k) ; t < seq.size() ; ++t)
                cand &= g.neighbours(seq[t]);
            bool found = false;
            cand.for_each([&] (Vertex z) {
                if (found || exhausted)
                    return;
                if (++nodes > budget) {
                    exhausted = true;
                    return;
                }
                seq.push_back(z);
                avail.reset(z);
                if (self(self, j + 1))
                    found = true;
                else {
                    seq.pop_back();
                    avail.set(z);
                }
            });
            return found;
        };
        if (dfs(dfs, 1))
            return std::vector<Vertex>(seq.begin() + k, seq.end());
        if (exhausted)
            return std::nullopt;
    }
    return std::nullopt;
}

/**
 * Joins the outward k-tuples x and y by a k-path x_1..x_k, interior, y_k..y_1
 * whose interior lies in U and whose total length is at most 7k.
 *
 * Preconditions: x and y are disjoint k-cliques outside U, both
 * (slack*delta, p)-connected to U, and |U| >= slack*delta*n. delta defaults
 * to cfg.delta. The layered strategy additionally needs room for its
 * interior. Failures after cfg.max_retries resampled carvings raise
 * StageError (stage connection_1; callers restage it).
 */
inline auto connect(const Graph & g, std::span<const Vertex> x, std::span<const Vertex> y, const VertexSet & u,
        const EmbedConfig & cfg, std::optional<double> delta = std::nullopt) -> KPath
{
    cfg.validate();
    const int k = cfg.k;
    const double p = cfg.density(g);
    const double d = delta ? *delta : cfg.delta;
    if (static_cast<int>(x.size()) != k || static_cast<int>(y.size()) != k)
        throw PreconditionError("connect: x and y must be k-tuples");
    VertexSet xs = VertexSet::from(g.order(), x);
    VertexSet ys = VertexSet::from(g.order(), y);
    if (xs.count() != k || ys.count() != k || xs.intersects(ys))
        throw PreconditionError("connect: x and y must be disjoint tuples of distinct vertices");
    if (u.intersects(xs) || u.intersects(ys))
        throw PreconditionError("connect: U meets an end tuple");
    if (u.count() < cfg.floor_threshold(d * g.order()) - discrepancy_tolerance)
        throw PreconditionError("connect: |U| = " + std::to_string(u.count()) + " is below delta*n");
    if (cfg.connect_strategy == ConnectStrategy::layered && u.count() < connect_interior_size(k))
        throw PreconditionError("connect: |U| = " + std::to_string(u.count()) + " cannot hold the connection interior");
    for (auto [t, label] : { std::pair{ x, "x" }, std::pair{ y, "y" } }) {
        int failed = first_failed_suffix(g, t, u, cfg.floor_threshold(d), p);
        if (failed == -1)
            throw PreconditionError(std::string("connect: ") + label + " is not a clique");
        if (failed > 0)
            throw ConnectednessError(failed, std::string("connect: ") + label + " is not (delta,p)-connected to U at suffix "
                    + std::to_string(failed));
    }

    std::uint64_t mix = cfg.seed;
    for (auto v : x)
        mix = mix * 1000003ULL + static_cast<std::uint64_t>(v);
    for (auto v : y)
        mix = mix * 1000003ULL + static_cast<std::uint64_t>(v);
    Rng rng(mix);

    auto finish = [&] (const std::vector<Vertex> & interior) {
        KPath path{ std::vector<Vertex>(x.begin(), x.end()), k };
        path.order.insert(path.order.end(), interior.begin(), interior.end());
        path.order.insert(path.order.end(), y.rbegin(), y.rend());
        for (auto v : interior)
            if (! u.contains(v))
                throw std::logic_error("connect: interior left U");
        if (! path.valid_in(g) || static_cast<int>(path.size()) > 7 * k)
            throw std::logic_error("connect: assembled path failed verification");
        return path;
    };

    std::optional<StageError> last_error;
    if (cfg.connect_strategy != ConnectStrategy::shortest && u.count() >= connect_interior_size(k)) {
        const double rho = std::min(detail::measured_connectedness(g, x, u, p), detail::measured_connectedness(g, y, u, p));
        for (int attempt = 0 ; attempt < cfg.max_retries ; ++attempt) {
            Rng local = rng.split();
            try {
                auto sc = build_connect_scaffold(g, x, y, u, p, rho, cfg, local);
                return finish(layered_connection(g, x, y, sc));
            }
            catch (const StageError & e) {
                last_error = e;
            }
        }
        if (cfg.connect_strategy == ConnectStrategy::layered)
            throw *last_error;
    }
    if (auto interior = shortest_connection(g, x, y, u, 7 * k - 2 * k, cfg.search_budget))
        return finish(*interior);
    auto r = stage_failure(Stage::connection_1, "no connection of length at most 7k found", "interior");
    if (last_error)
        r.outcome += "; layered: " + last_error->report().outcome;
    throw StageError(std::move(r));
}

}

#endif
