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

#ifndef HAMPOW_PSEUDO_CONNECTEDNESS_HPP
#define HAMPOW_PSEUDO_CONNECTEDNESS_HPP

#include <hampow/errors.hpp>
#include <hampow/graph/graph.hpp>
#include <hampow/pseudo/params.hpp>

#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace hampow {

enum class DegreeSide
{
    below,
    above
};

/// { v not in X : deg_X(v) < threshold } (or > threshold for `above`).
inline auto low_degree_vertices(const Graph & g, const VertexSet & x, double threshold,
        DegreeSide side = DegreeSide::below) -> VertexSet
{
    if (x.empty())
        throw PreconditionError("low_degree_vertices: X is empty");
    VertexSet result(g.order());
    for (Vertex v = 0 ; v < g.order() ; ++v) {
        if (x.contains(v))
            continue;
        double d = g.neighbours(v).intersection_count(x);
        if (side == DegreeSide::below ? d < threshold : d > threshold)
            result.set(v);
    }
    return result;
}

/// rho (p/2)^j |X|: the quota for a suffix of length j.
inline auto connectedness_quota(double rho, double p, int j, int x_size) -> double
{
    return rho * std::pow(p / 2.0, j) * x_size;
}

/**
 * Index i (1-based) of the first suffix (x_i..x_l) whose common degree into
 * X misses its quota, 0 if all pass, or -1 if t is not a clique or meets X.
 */
inline auto first_failed_suffix(const Graph & g, std::span<const Vertex> t, const VertexSet & x, double rho, double p) -> int
{
    if (t.empty() || ! is_clique(g, t))
        return -1;
    for (auto v : t)
        if (x.contains(v))
            return -1;
    const auto l = static_cast<int>(t.size());
    const int xs = x.count();
    VertexSet common = x;
    // Walk suffixes from the shortest (x_l) to the full tuple; report the smallest failing i.
    int failed = 0;
    for (int i = l ; i >= 1 ; --i) {
        common &= g.neighbours(t[static_cast<std::size_t>(i - 1)]);
        if (common.count() < connectedness_quota(rho, p, l - i + 1, xs) - discrepancy_tolerance)
            failed = i;
    }
    return failed;
}

/// (rho,p)-connectedness of a tuple to X.
inline auto is_connected_tuple(const Graph & g, std::span<const Vertex> t, const VertexSet & x, double rho, double p) -> bool
{
    return first_failed_suffix(g, t, x, rho, p) == 0;
}

/// Raised when a witness is requested for a tuple that is not connected.
class ConnectednessError : public PreconditionError
{
    private:
        int _index;

    public:
        ConnectednessError(int index, const std::string & what) :
            PreconditionError(what),
            _index(index)
        {
        }

        /// 1-based suffix index, or -1 for the clique/disjointness clause.
        auto index() const -> int { return _index; }
};

struct ConnectednessWitness
{
    double rho = 0.0;
    double p = 0.0;
    VertexTuple tuple;
    /// The single witness set Y.
    VertexSet y;
    /// nested[i-1] = N_X(x_i..x_l); nested[0] is the innermost.
    std::vector<VertexSet> nested;
};

/**
 * Builds one Y of size ceil(rho (p/2) |X|) that meets every suffix quota.
 * The sets N_X(x_i..x_l) are nested, so filling quotas from the innermost
 * outwards never has to undo a choice.
 */
inline auto connectedness_witness(const Graph & g, std::span<const Vertex> t, const VertexSet & x, double rho, double p)
    -> ConnectednessWitness
{
    int failed = first_failed_suffix(g, t, x, rho, p);
    if (failed == -1)
        throw ConnectednessError(-1, "connectedness_witness: tuple is not a clique disjoint from X");
    if (failed > 0)
        throw ConnectednessError(failed, "connectedness_witness: suffix starting at index " + std::to_string(failed) + " misses its quota");

    const auto l = static_cast<int>(t.size());
    const int xs = x.count();
    ConnectednessWitness w{ rho, p, VertexTuple(t.begin(), t.end()), VertexSet(g.order()), {} };
    w.nested.resize(static_cast<std::size_t>(l));
    VertexSet common = x;
    for (int i = l ; i >= 1 ; --i) {
        common &= g.neighbours(t[static_cast<std::size_t>(i - 1)]);
        w.nested[static_cast<std::size_t>(i - 1)] = common;
    }

    auto fill = [&] (const VertexSet & from, int target) {
        int have = w.y.intersection_count(from);
        from.for_each([&] (Vertex v) {
            if (have < target && ! w.y.contains(v)) {
                w.y.set(v);
                ++have;
            }
        });
    };
    for (int i = 1 ; i <= l ; ++i) {
        auto quota = static_cast<int>(std::ceil(connectedness_quota(rho, p, l - i + 1, xs) - discrepancy_tolerance));
        fill(w.nested[static_cast<std::size_t>(i - 1)], quota);
    }
    auto size = static_cast<int>(std::ceil(rho * (p / 2.0) * xs - discrepancy_tolerance));
    fill(w.nested[static_cast<std::size_t>(l - 1)], size);
    fill(x, size);
    return w;
}

}

#endif
