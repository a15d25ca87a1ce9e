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

#ifndef HAMPOW_EMBED_EXTEND_HPP
#define HAMPOW_EMBED_EXTEND_HPP

#include <hampow/embed/config.hpp>
#include <hampow/graph/graph.hpp>
#include <hampow/pseudo/connectedness.hpp>

#include <algorithm>
#include <span>
#include <utility>
#include <vector>
#include <string>

namespace hampow {

/// Outcome of scanning N_L(t) for an extending vertex.
struct ExtensionScan
{
    Vertex best = -1;
    int best_degree = -1;
    int neighbourhood = 0;
    int fail_l = 0;
    int fail_r = 0;
};

namespace detail {

/**
 * Every x in L adjacent to all of t such that (t_2..t_k, x) is
 * (rho,p)-connected to L - x and, when r is given, to r; ordered by the
 * common degree of the new tuple into L - x (largest first), then by id.
 */
inline auto extension_candidates(const Graph & g, std::span<const Vertex> t, const VertexSet & l, const VertexSet * r,
        double rho, double p, ExtensionScan * scan = nullptr) -> std::vector<std::pair<int, Vertex>>
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
        bool ok = true;
        if (first_failed_suffix(g, next, rest, rho, p) != 0) {
            if (scan)
                ++scan->fail_l;
            ok = false;
        }
        if (r && first_failed_suffix(g, next, *r, rho, p) != 0) {
            if (scan)
                ++scan->fail_r;
            ok = false;
        }
        if (ok)
            out.emplace_back(-common_degree(g, next, rest), x);
        rest.set(x);
    });
    std::sort(out.begin(), out.end());
    for (auto & [d, x] : out)
        d = -d;
    return out;
}

inline auto scan_extension(const Graph & g, std::span<const Vertex> t, const VertexSet & l, const VertexSet * r,
        double rho, double p) -> ExtensionScan
{
    ExtensionScan scan;
    auto cands = extension_candidates(g, t, l, r, rho, p, &scan);
    if (! cands.empty()) {
        scan.best_degree = cands.front().first;
        scan.best = cands.front().second;
    }
    return scan;
}

struct ExtensionRun
{
    std::vector<Vertex> added;
    long long nodes = 0;
    int backtracks = 0;
    bool reached = false;
    ExtensionScan stall;
};

/**
 * Repeated greedy steps from the end of `path` until |L| <= target. On a
 * stall the search backs up and takes the next candidate of the most
 * recent step that has one, spending at most `budget` extra nodes; the
 * longest sequence seen is returned when the target is not reached.
 *
 * `candidates(t, l, depth, scan)` lists the admissible next vertices for
 * end tuple t, best first; depth is the number of vertices already added.
 */
template <typename Candidates>
auto extension_search_with(const std::vector<Vertex> & path, int k, VertexSet l, int target, long long budget,
        Candidates && candidates) -> ExtensionRun
{
    struct Frame
    {
        std::vector<std::pair<int, Vertex>> cands;
        std::size_t next = 0;
    };
    ExtensionRun run;
    std::vector<Vertex> tail(path.end() - k, path.end());
    std::vector<Vertex> added;
    std::vector<Frame> stack;
    auto expand = [&] {
        ExtensionScan scan;
        Frame f{ candidates(std::span<const Vertex>(tail.end() - k, tail.end()), l, static_cast<int>(added.size()), &scan) };
        if (f.cands.empty() && added.size() >= run.added.size())
            run.stall = scan;
        stack.push_back(std::move(f));
    };
    expand();
    long long extra = 0;
    while (! stack.empty()) {
        if (l.count() <= target) {
            run.added = added;
            run.reached = true;
            return run;
        }
        Frame & top = stack.back();
        if (top.next < top.cands.size()) {
            Vertex x = top.cands[top.next++].second;
            added.push_back(x);
            tail.push_back(x);
            l.reset(x);
            ++run.nodes;
            if (run.backtracks > 0)
                ++extra;
            if (added.size() > run.added.size())
                run.added = added;
            expand();
            continue;
        }
        if (extra >= budget || added.empty())
            break;
        stack.pop_back();
        ++run.backtracks;
        l.set(added.back());
        added.pop_back();
        tail.pop_back();
    }
    return run;
}

/// extension_search_with the extend_step rule.
inline auto extension_search(const Graph & g, const std::vector<Vertex> & path, int k, VertexSet l, const VertexSet * r,
        double rho, double p, int target, long long budget) -> ExtensionRun
{
    return extension_search_with(path, k, std::move(l), target, budget,
            [&] (std::span<const Vertex> t, const VertexSet & cur, int, ExtensionScan * scan) {
                return extension_candidates(g, t, cur, r, rho, p, scan);
            });
}

inline auto extension_failure(const ExtensionScan & scan) -> StageError
{
    auto r = stage_failure(Stage::extension, "no extending vertex keeps the new tuple connected",
            scan.neighbourhood == 0 ? "N_L(t)" : "candidates");
    r.add("|N_L(t)|", scan.neighbourhood);
    r.add("fail_connected_L", scan.fail_l);
    r.add("fail_connected_R", scan.fail_r);
    return StageError(std::move(r));
}

}

/**
 * One greedy step: a vertex x in L adjacent to all of t such that
 * (t_2..t_k, x) is (1/6,p)-connected to L - x and to R, maximising
 * deg_{L-x}(t_2..t_k, x) with ties to the smaller id.
 *
 * Requires t (1/8,p)-connected to L and R, L and R disjoint, and both of
 * size at least delta_onestep n. All of these carry slack.
 */
inline auto extend_step(const Graph & g, std::span<const Vertex> t, const VertexSet & l, const VertexSet & r,
        const EmbedConfig & cfg) -> Vertex
{
    cfg.validate();
    const double p = cfg.density(g);
    if (static_cast<int>(t.size()) != cfg.k)
        throw PreconditionError("extend_step: t must be a k-tuple");
    if (l.intersects(r))
        throw PreconditionError("extend_step: L and R must be disjoint");
    const double floor_size = cfg.floor_threshold(cfg.delta_onestep() * g.order());
    if (l.empty() || l.count() < floor_size - discrepancy_tolerance)
        throw PreconditionError("extend_step: |L| = " + std::to_string(l.count()) + " is below delta_onestep n");
    if (r.empty() || r.count() < floor_size - discrepancy_tolerance)
        throw PreconditionError("extend_step: |R| = " + std::to_string(r.count()) + " is below delta_onestep n");
    for (auto [set, label] : { std::pair{ &l, "L" }, std::pair{ &r, "R" } }) {
        int failed = first_failed_suffix(g, t, *set, cfg.floor_threshold(1.0 / 8.0), p);
        if (failed != 0)
            throw ConnectednessError(failed, std::string("extend_step: t is not (1/8,p)-connected to ") + label);
    }
    auto scan = detail::scan_extension(g, t, l, &r, cfg.floor_threshold(1.0 / 6.0), p);
    if (scan.best < 0)
        throw detail::extension_failure(scan);
    return scan.best;
}

}

#endif
