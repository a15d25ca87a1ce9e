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


#ifndef HAMPOW_COUNT_BRUTE_FORCE_HPP
#define HAMPOW_COUNT_BRUTE_FORCE_HPP

#include <hampow/errors.hpp>
#include <hampow/graph/graph.hpp>

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace hampow {

namespace detail {

class KPowerSearch
{
    private:
        int _n;
        int _k;
        std::vector<std::uint32_t> _adj;
        std::vector<Vertex> _order;

        auto closes() const -> bool
        {
            for (int i = 0 ; i < _n ; ++i)
                for (int d = 1 ; d <= _k && d < _n ; ++d) {
                    int j = i + d;
                    if (j < _n)
                        continue;
                    j -= _n;
                    if (! (_adj[static_cast<std::size_t>(_order[static_cast<std::size_t>(i)])] >> _order[static_cast<std::size_t>(j)] & 1u))
                        return false;
                }
            return true;
        }

        // Vertices that may follow the current prefix.
        auto allowed(std::uint32_t unused) const -> std::uint32_t
        {
            std::uint32_t mask = unused;
            const int depth = static_cast<int>(_order.size());
            for (int d = 1 ; d <= _k && d <= depth ; ++d)
                mask &= _adj[static_cast<std::size_t>(_order[static_cast<std::size_t>(depth - d)])];
            return mask;
        }

    public:
        KPowerSearch(const Graph & g, int k) :
            _n(g.order()),
            _k(k),
            _adj(static_cast<std::size_t>(g.order()), 0u)
        {
            for (Vertex v = 0 ; v < _n ; ++v)
                g.neighbours(v).for_each([&] (Vertex u) { _adj[static_cast<std::size_t>(v)] |= 1u << u; });
        }

        /// Orderings starting at vertex 0, stopping once `limit` are found.
        auto count_from_zero(long long limit) -> long long
        {
            _order.assign(1, 0);
            long long found = 0;
            recurse(((1u << _n) - 1u) & ~1u, found, limit);
            return found;
        }

        auto order() const -> const std::vector<Vertex> & { return _order; }

    private:
        auto recurse(std::uint32_t unused, long long & found, long long limit) -> bool
        {
            if (unused == 0) {
                if (closes() && ++found >= limit)
                    return true;
                return false;
            }
            std::uint32_t mask = allowed(unused);
            while (mask) {
                int v = __builtin_ctz(mask);
                mask &= mask - 1;
                _order.push_back(v);
                if (recurse(unused & ~(1u << v), found, limit))
                    return true;
                _order.pop_back();
            }
            return false;
        }
};

}

/**
 * Number of orderings v_1..v_n of V(G) that form the k-th power of a
 * Hamilton cycle (labeled count: rotations and reflections are distinct).
 */
inline auto brute_force_count(const Graph & g, int k) -> long long
{
    if (k < 1)
        throw PreconditionError("brute_force_count: k must be positive");
    if (g.order() > 10)
        throw PreconditionError("brute_force_count: at most 10 vertices");
    if (g.order() == 0)
        return 1;
    // Validity is invariant under rotation, so fix the first vertex.
    detail::KPowerSearch search(g, k);
    return g.order() * search.count_from_zero(std::numeric_limits<long long>::max());
}

/// Some Hamilton k-cycle order, or nothing.
inline auto brute_force_find(const Graph & g, int k) -> std::optional<std::vector<Vertex>>
{
    if (k < 1)
        throw PreconditionError("brute_force_find: k must be positive");
    if (g.order() > 14)
        throw PreconditionError("brute_force_find: at most 14 vertices");
    if (g.order() == 0)
        return std::vector<Vertex>{};
    detail::KPowerSearch search(g, k);
    if (search.count_from_zero(1) == 0)
        return std::nullopt;
    return search.order();
}

}

#endif
