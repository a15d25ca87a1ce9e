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


#ifndef HAMPOW_GEN_SUM_ORDERING_HPP
#define HAMPOW_GEN_SUM_ORDERING_HPP

#include <hampow/count/brute_force.hpp>
#include <hampow/embed/pipeline.hpp>
#include <hampow/gen/generators.hpp>

#include <optional>
#include <vector>

namespace hampow {

/**
 * Checks by modular arithmetic that a_i + a_{i+j} lies in A for every i and
 * 1 <= j <= k (indices mod |A|, skipping j >= |A|), and that `order` lists
 * each element of A exactly once.
 */
inline auto sums_stay_in_subgroup(int q, const std::vector<int> & subgroup, const std::vector<int> & order, int k) -> bool
{
    std::vector<bool> member(static_cast<std::size_t>(q), false);
    for (int a : subgroup)
        member[static_cast<std::size_t>(a)] = true;
    if (order.size() != subgroup.size())
        return false;
    std::vector<bool> seen(static_cast<std::size_t>(q), false);
    for (int a : order) {
        if (a <= 0 || a >= q || ! member[static_cast<std::size_t>(a)] || seen[static_cast<std::size_t>(a)])
            return false;
        seen[static_cast<std::size_t>(a)] = true;
    }
    const auto d = order.size();
    for (std::size_t i = 0 ; i < d ; ++i)
        for (std::size_t j = 1 ; j <= static_cast<std::size_t>(k) && j < d ; ++j)
            if (! member[static_cast<std::size_t>((order[i] + order[(i + j) % d]) % q)])
                return false;
    return true;
}

/**
 * A cyclic ordering of the subgroup A of F_q^* in which every element plus
 * each of its next k successors lands in A: a Hamilton k-cycle of the sum
 * graph. Exhaustive search up to 14 elements, the embedder (k >= 2) above
 * that; nothing when no ordering is found.
 */
inline auto sum_closed_ordering(int q, const std::vector<int> & subgroup, int k, const EmbedConfig & cfg = {})
    -> std::optional<std::vector<int>>
{
    if (k < 1)
        throw PreconditionError("sum_closed_ordering: k must be positive");
    const Graph g = subgroup_sum_graph(q, subgroup);
    std::optional<std::vector<Vertex>> cycle;
    if (g.order() <= 14) {
        cycle = brute_force_find(g, k);
    }
    else if (k >= 2) {
        EmbedConfig local = cfg;
        local.k = k;
        auto result = embed_with_report(g, local);
        if (result.ok)
            cycle = result.cycle;
    }
    if (! cycle)
        return std::nullopt;
    std::vector<int> order;
    for (Vertex v : *cycle)
        order.push_back(subgroup[static_cast<std::size_t>(v)]);
    if (! sums_stay_in_subgroup(q, subgroup, order, k))
        throw std::logic_error("sum_closed_ordering: ordering failed the modular recheck");
    return order;
}

}

#endif
