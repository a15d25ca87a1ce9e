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

#include <hampow/gen/generators.hpp>
#include <hampow/gen/sum_ordering.hpp>
#include <hampow/pseudo/spectral.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

using namespace hampow;

TEST(Rng, PinnedStream)
{
    // First outputs for seed 0 under the documented splitmix64 -> xorshift64* mapping.
    std::uint64_t z = 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
    std::uint64_t x = z;
    Rng rng(0);
    for (int i = 0 ; i < 5 ; ++i) {
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        EXPECT_EQ(rng.next(), x * 0x2545F4914F6CDD1DULL);
    }
}

TEST(Gnp, Extremes)
{
    EXPECT_EQ(gnp(20, 0.0, 1).size(), 0);
    EXPECT_EQ(gnp(20, 1.0, 1).size(), 190);
    EXPECT_THROW(gnp(5, 1.5, 1), PreconditionError);
}

TEST(Gnp, Deterministic)
{
    EXPECT_EQ(gnp(20, 0.5, 7), gnp(20, 0.5, 7));
    EXPECT_EQ(gnp(20, 0.5, 7).hash(), gnp(20, 0.5, 7).hash());
}

TEST(Gnp, RowMajorConsumption)
{
    Rng rng(7);
    auto g = gnp(20, 0.5, 7);
    for (int i = 0 ; i < 20 ; ++i)
        for (int j = i + 1 ; j < 20 ; ++j)
            EXPECT_EQ(g.adjacent(i, j), rng.uniform() < 0.5);
}

TEST(Paley, FiveIsCycle)
{
    auto g = paley(5);
    EXPECT_EQ(g.size(), 5);
    EXPECT_TRUE(g.is_regular());
    EXPECT_EQ(g.min_degree(), 2);
}

TEST(Paley, ThirteenSpectrum)
{
    auto g = paley(13);
    EXPECT_TRUE(g.is_regular());
    EXPECT_EQ(g.min_degree(), 6);
    EXPECT_NEAR(second_eigenvalue(g), (std::sqrt(13.0) + 1) / 2, 1e-6);
}

TEST(Paley, ThreeDistinctEigenvalues)
{
    for (int q : { 13, 17, 29, 37 }) {
        auto spectrum = adjacency_spectrum(paley(q));
        std::vector<double> distinct;
        for (double v : spectrum)
            if (distinct.empty() || v - distinct.back() > 1e-6)
                distinct.push_back(v);
        EXPECT_EQ(distinct.size(), 3u) << q;
    }
}

TEST(Paley, Rejections)
{
    EXPECT_THROW(paley(9), PreconditionError);
    EXPECT_THROW(paley(7), PreconditionError);
}

TEST(CyclePower, Examples)
{
    auto g = cycle_power(10, 2);
    EXPECT_EQ(g.size(), 20);
    EXPECT_TRUE(g.is_regular());
    EXPECT_EQ(g.min_degree(), 4);
    EXPECT_THROW(cycle_power(7, 3), PreconditionError);
    std::vector<Vertex> id(50);
    std::iota(id.begin(), id.end(), 0);
    EXPECT_TRUE(verify_kpower(cycle_power(50, 2), id, 2, true));
}

TEST(SubgroupSum, QuadraticResiduesThirteen)
{
    std::vector<int> a{ 1, 3, 4, 9, 10, 12 };
    auto g = subgroup_sum_graph(13, a);
    EXPECT_EQ(g.order(), 6);
    std::set<int> members(a.begin(), a.end());
    for (int i = 0 ; i < 6 ; ++i)
        for (int j = 0 ; j < 6 ; ++j) {
            if (i != j) {
                EXPECT_EQ(g.adjacent(i, j), members.count((a[i] + a[j]) % 13) == 1);
            }
        }
    EXPECT_EQ(quadratic_residues(13), a);
}

TEST(SubgroupSum, Rejections)
{
    EXPECT_THROW(subgroup_sum_graph(13, { 1, 2 }), PreconditionError);
    EXPECT_THROW(subgroup_sum_graph(12, { 1 }), PreconditionError);
}

TEST(SubgroupSum, FiveIsEdgeless)
{
    EXPECT_EQ(subgroup_sum_graph(5, { 1, 4 }).size(), 0);
}

TEST(SubgroupSum, GeneratedSubgroup)
{
    auto a = generated_subgroup(13, 4);
    std::sort(a.begin(), a.end());
    EXPECT_EQ(a, quadratic_residues(13));
}

TEST(RandomRegular, IsRegularAndSimple)
{
    auto g = random_regular(30, 7 - 1, 4);
    EXPECT_TRUE(g.is_regular());
    EXPECT_EQ(g.min_degree(), 6);
    EXPECT_THROW(random_regular(5, 3, 1), PreconditionError);
}

namespace {
    // Independent of the graph machinery: plain residue arithmetic.
    auto consecutive_sums_ok(int q, const std::vector<int> & order, int k) -> bool
    {
        std::set<int> residues;
        for (int x = 1 ; x < q ; ++x)
            residues.insert(x * x % q);
        const auto d = order.size();
        if (std::set<int>(order.begin(), order.end()) != residues || d != residues.size())
            return false;
        for (std::size_t i = 0 ; i < d ; ++i)
            for (std::size_t j = 1 ; j <= static_cast<std::size_t>(k) && j < d ; ++j)
                if (! residues.count((order[i] + order[(i + j) % d]) % q))
                    return false;
        return true;
    }
}

TEST(SumClosedOrdering, QuadraticResidues)
{
    for (int q : { 17, 29 }) {
        auto order = sum_closed_ordering(q, quadratic_residues(q), 1);
        ASSERT_TRUE(order.has_value()) << "q=" << q;
        EXPECT_TRUE(consecutive_sums_ok(q, *order, 1)) << "q=" << q;
        EXPECT_TRUE(sums_stay_in_subgroup(q, quadratic_residues(q), *order, 1));
    }
}

TEST(SumClosedOrdering, ThirteenHasNoOrdering)
{
    // The sum graph of the residues mod 13 is two disjoint triangles.
    auto qr = quadratic_residues(13);
    auto g = subgroup_sum_graph(13, qr);
    EXPECT_EQ(g.size(), 6);
    EXPECT_EQ(brute_force_count(g, 1), 0);
    std::vector<int> perm = qr;
    bool any = false;
    do
        any = any || consecutive_sums_ok(13, perm, 1);
    while (std::next_permutation(perm.begin(), perm.end()));
    EXPECT_FALSE(any);
    EXPECT_FALSE(sum_closed_ordering(13, qr, 1).has_value());
}

TEST(SumClosedOrdering, EdgelessNotFound)
{
    EXPECT_FALSE(sum_closed_ordering(5, { 1, 4 }, 1).has_value());
    EXPECT_THROW(sum_closed_ordering(13, { 1, 2 }, 1), PreconditionError);
}

TEST(SumClosedOrdering, RecheckRejectsBadOrders)
{
    auto qr = quadratic_residues(17);
    EXPECT_FALSE(sums_stay_in_subgroup(17, qr, { 1, 2, 4, 8, 9, 13, 15 }, 1));
    EXPECT_FALSE(sums_stay_in_subgroup(17, qr, { 1, 1, 4, 8, 9, 13, 15, 16 }, 1));
    auto order = sum_closed_ordering(17, qr, 1);
    ASSERT_TRUE(order.has_value());
    auto swapped = *order;
    std::swap(swapped[0], swapped[1]);
    EXPECT_EQ(sums_stay_in_subgroup(17, qr, swapped, 1), consecutive_sums_ok(17, swapped, 1));
}

TEST(SumClosedOrdering, EmbedderPathRechecksOrDeclines)
{
    // 30 residues mod 61: beyond exhaustive search.
    auto qr = quadratic_residues(61);
    EmbedConfig cfg;
    cfg.slack = 0.02;
    cfg.reservoir_size = 0;
    auto order = sum_closed_ordering(61, qr, 2, cfg);
    if (order) {
        EXPECT_EQ(order->size(), 30u);
        EXPECT_TRUE(consecutive_sums_ok(61, *order, 2));
    }
    EXPECT_FALSE(sum_closed_ordering(61, qr, 1, cfg).has_value());
}
