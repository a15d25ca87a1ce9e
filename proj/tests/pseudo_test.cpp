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
#include <hampow/pseudo/connectedness.hpp>
#include <hampow/pseudo/discrepancy.hpp>
#include <hampow/pseudo/spectral.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace hampow;

namespace {
    // Cyclic Jacobi rotations; slow but independent of Eigen.
    auto jacobi_spectrum(const Graph & g) -> std::vector<double>
    {
        const int n = g.order();
        std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
        for (auto [u, v] : g.edges())
            a[u][v] = a[v][u] = 1.0;
        for (int sweep = 0 ; sweep < 100 ; ++sweep) {
            double off = 0.0;
            for (int i = 0 ; i < n ; ++i)
                for (int j = i + 1 ; j < n ; ++j)
                    off += a[i][j] * a[i][j];
            if (off < 1e-22)
                break;
            for (int p = 0 ; p < n ; ++p)
                for (int q = p + 1 ; q < n ; ++q) {
                    if (std::abs(a[p][q]) < 1e-300)
                        continue;
                    double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
                    double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
                    double c = 1 / std::sqrt(t * t + 1), s = t * c;
                    for (int k = 0 ; k < n ; ++k) {
                        double akp = a[k][p], akq = a[k][q];
                        a[k][p] = c * akp - s * akq;
                        a[k][q] = s * akp + c * akq;
                    }
                    for (int k = 0 ; k < n ; ++k) {
                        double apk = a[p][k], aqk = a[q][k];
                        a[p][k] = c * apk - s * aqk;
                        a[q][k] = s * apk + c * aqk;
                    }
                }
        }
        std::vector<double> ev(n);
        for (int i = 0 ; i < n ; ++i)
            ev[i] = a[i][i];
        std::sort(ev.begin(), ev.end());
        return ev;
    }

    auto reference_lambda(const Graph & g) -> double
    {
        auto ev = jacobi_spectrum(g);
        return std::max(std::abs(ev[ev.size() - 2]), std::abs(ev[0]));
    }

    // Calls f(xmask, ymask) for every ordered pair of disjoint nonempty subsets.
    template <typename F>
    auto for_each_disjoint_pair(int n, F && f) -> void
    {
        long long total = 1;
        for (int i = 0 ; i < n ; ++i)
            total *= 3;
        for (long long code = 0 ; code < total ; ++code) {
            unsigned xm = 0, ym = 0;
            long long c = code;
            for (int i = 0 ; i < n ; ++i, c /= 3) {
                if (c % 3 == 1)
                    xm |= 1u << i;
                else if (c % 3 == 2)
                    ym |= 1u << i;
            }
            if (xm && ym)
                f(xm, ym);
        }
    }

    auto masks_edges(const std::vector<unsigned> & rows, unsigned xm, unsigned ym) -> long long
    {
        long long e = 0;
        for (std::size_t v = 0 ; v < rows.size() ; ++v)
            if ((xm >> v) & 1)
                e += std::popcount(rows[v] & ym);
        return e;
    }

    auto mask_rows(const Graph & g) -> std::vector<unsigned>
    {
        std::vector<unsigned> rows(g.order(), 0);
        for (auto [u, v] : g.edges()) {
            rows[u] |= 1u << v;
            rows[v] |= 1u << u;
        }
        return rows;
    }

    auto witness_is_genuine(const Graph & g, const DiscrepancyWitness & w, double p, double bound) -> bool
    {
        return ! w.x.intersects(w.y) && edges_between(g, w.x, w.y) == w.observed
            && std::abs(w.observed - p * w.x.count() * w.y.count()) >= bound - 1e-9;
    }
}

TEST(SecondEigenvalue, CompleteGraph)
{
    EXPECT_NEAR(second_eigenvalue(complete_graph(4)), 1.0, 1e-9);
}

TEST(SecondEigenvalue, SixCycle)
{
    auto g = cycle_graph(6);
    EXPECT_NEAR(second_eigenvalue(g), 2.0, 1e-9);
    EXPECT_NEAR(reference_lambda(g), 2.0, 1e-9);
}

TEST(SecondEigenvalue, PaleyThirteen)
{
    auto g = paley(13);
    double expect = reference_lambda(g);
    EXPECT_NEAR(second_eigenvalue(g), expect, 1e-6 * expect);
    EXPECT_NEAR(expect, (std::sqrt(13.0) + 1) / 2, 1e-8);
}

TEST(SecondEigenvalue, RejectsIrregular)
{
    EXPECT_THROW(second_eigenvalue(build_graph(3, { { 0, 1 } })), PreconditionError);
}

TEST(SecondEigenvalue, IterativeAgreesWithDense)
{
    for (std::uint64_t seed = 1 ; seed <= 3 ; ++seed) {
        auto g = random_regular(300, 10, seed);
        double dense = second_eigenvalue(g, EigenMethod::dense);
        double iter = second_eigenvalue(g, EigenMethod::iterative);
        EXPECT_NEAR(iter, dense, 1e-6 * dense);
    }
    auto bip = cycle_graph(40);
    EXPECT_NEAR(second_eigenvalue(bip, EigenMethod::iterative), 2.0, 1e-6);
}

TEST(CheckJumbled, CompleteGraphPerfectlyBalanced)
{
    EXPECT_TRUE(check_jumbled(complete_graph(7), 1.0, 0.0).satisfied());
}

TEST(CheckJumbled, EdgelessViolates)
{
    auto g = empty_graph(6);
    auto v = check_jumbled(g, 0.5, 0.1);
    ASSERT_TRUE(v.violated());
    ASSERT_TRUE(v.witness);
    EXPECT_EQ(v.witness->observed, 0);
    double ab = v.witness->x.count() * v.witness->y.count();
    EXPECT_GT(0.5 * ab, 0.1 * std::sqrt(ab));
}

TEST(CheckJumbled, ExhaustiveBetaBoundary)
{
    auto g = gnp(10, 0.5, 2);
    auto rows = mask_rows(g);
    double beta = 0.0;
    for_each_disjoint_pair(10, [&] (unsigned xm, unsigned ym) {
        double ab = std::popcount(xm) * std::popcount(ym);
        beta = std::max(beta, std::abs(masks_edges(rows, xm, ym) - 0.5 * ab) / std::sqrt(ab));
    });
    EXPECT_TRUE(check_jumbled(g, 0.5, beta).satisfied());
    auto v = check_jumbled(g, 0.5, 0.99 * beta);
    ASSERT_TRUE(v.violated());
    double ab = v.witness->x.count() * v.witness->y.count();
    EXPECT_TRUE(witness_is_genuine(g, *v.witness, 0.5, 0.99 * beta * std::sqrt(ab)));
}

TEST(CheckJumbled, ExactModeSizeLimit)
{
    EXPECT_THROW(check_jumbled(complete_graph(19), 1.0, 0.0), PreconditionError);
}

TEST(CheckJumbled, SampledFindsGrossViolation)
{
    auto g = disjoint_cliques(2, 30);
    auto v = check_jumbled(g, 0.5, 0.5, CheckMode::sampled, 10000, 3);
    ASSERT_TRUE(v.violated());
    double ab = v.witness->x.count() * v.witness->y.count();
    EXPECT_TRUE(witness_is_genuine(g, *v.witness, 0.5, 0.5 * std::sqrt(ab)));
}

TEST(CheckPseudorandomExact, CompleteGraphSatisfied)
{
    EXPECT_TRUE(check_pseudorandom_exact(complete_graph(6), { 0.1, 0.999, 1, 2 }).satisfied());
}

TEST(CheckPseudorandomExact, EdgelessViolated)
{
    auto v = check_pseudorandom_exact(empty_graph(6), { 0.1, 0.5, 0, 1 });
    ASSERT_TRUE(v.violated());
    EXPECT_TRUE(witness_is_genuine(empty_graph(6), *v.witness, 0.5, v.witness->bound));
}

TEST(CheckPseudorandomExact, ThresholdEpsilonFromExhaustiveSearch)
{
    // For k = l = 0 a pair violates at eps iff both sides have >= ceil(eps n)
    // vertices and its relative discrepancy is >= eps; eps* is the largest
    // eps at which some pair still violates.
    const int n = 14;
    const double p = 0.5;
    auto g = gnp(n, p, 5);
    auto rows = mask_rows(g);
    double eps_star = 0.0;
    for_each_disjoint_pair(n, [&] (unsigned xm, unsigned ym) {
        int a = std::popcount(xm), b = std::popcount(ym);
        double rel = std::abs(masks_edges(rows, xm, ym) - p * a * b) / (p * a * b);
        eps_star = std::max(eps_star, std::min(rel, static_cast<double>(std::min(a, b)) / n));
    });
    ASSERT_GT(eps_star, 0.0);
    EXPECT_TRUE(check_pseudorandom_exact(g, { 1.05 * eps_star, p, 0, 0 }).satisfied());
    auto v = check_pseudorandom_exact(g, { 0.95 * eps_star, p, 0, 0 });
    ASSERT_TRUE(v.violated());
    EXPECT_TRUE(witness_is_genuine(g, *v.witness, p, v.witness->bound));
    EXPECT_GE(v.witness->x.count(), 0.95 * eps_star * n);
    EXPECT_GE(v.witness->y.count(), 0.95 * eps_star * n);
}

TEST(CheckPseudorandomExact, RejectsLargeGraphsAndBadParams)
{
    EXPECT_THROW(check_pseudorandom_exact(complete_graph(19), { 0.1, 0.5, 0, 0 }), PreconditionError);
    EXPECT_THROW(check_pseudorandom_exact(complete_graph(5), { 0.1, 1.0, 0, 0 }), PreconditionError);
    EXPECT_THROW(check_pseudorandom_exact(complete_graph(5), { 0.1, 0.5, 2, 1 }), PreconditionError);
}

TEST(ImpliedDensity, Formula)
{
    EXPECT_TRUE(implied_density({ 0.1, 0.5, 0, 2 }, 41));
    EXPECT_FALSE(implied_density({ 0.1, 0.5, 0, 2 }, 40));
}

TEST(CertifyViaSpectrum, CompleteGraphEight)
{
    auto g = complete_graph(8);
    double p = 7.0 / 8.0;
    auto v = certify_via_spectrum(g, p, 1, 2);
    ASSERT_TRUE(v.satisfied());
    double eps = std::sqrt(1.0 / (std::pow(p, 2.5) * 8));
    EXPECT_NEAR(*v.certified_epsilon, eps, 1e-5);
    EXPECT_TRUE(check_pseudorandom_exact(g, { *v.certified_epsilon, p, 1, 2 }).satisfied());
}

TEST(CertifyViaSpectrum, PaleySeventeen)
{
    auto g = paley(17);
    double p = 8.0 / 17.0;
    auto v = certify_via_spectrum(g, p, 0, 0);
    double lambda = reference_lambda(g);
    EXPECT_NEAR(*v.lambda, lambda, 1e-6);
    ASSERT_TRUE(v.satisfied());
    EXPECT_NEAR(*v.certified_epsilon, std::sqrt(lambda / (p * 17)), 1e-5);
    EXPECT_TRUE(check_pseudorandom_exact(g, { *v.certified_epsilon, p, 0, 0 }).satisfied());
}

TEST(CertifyViaSpectrum, SixCycleUndetermined)
{
    auto v = certify_via_spectrum(cycle_graph(6), 1.0 / 3.0, 1, 2);
    EXPECT_EQ(v.status, VerdictStatus::undetermined);
}

TEST(CertifyViaSpectrum, RejectsMismatchedDensityAndIrregular)
{
    EXPECT_THROW(certify_via_spectrum(complete_graph(8), 0.5, 0, 0), PreconditionError);
    EXPECT_THROW(certify_via_spectrum(build_graph(3, { { 0, 1 } }), 0.5, 0, 0), PreconditionError);
}

TEST(CertifyViaSpectrum, SoundOnSmallRegularGraphs)
{
    int certified = 0;
    for (std::uint64_t seed = 0 ; seed < 30 ; ++seed) {
        int n = 10 + static_cast<int>(seed % 5);
        int d = n - 3 - static_cast<int>(seed % 2);
        if (n * d % 2)
            --d;
        auto g = random_regular(n, d, seed);
        double p = static_cast<double>(d) / n;
        for (int k = 0 ; k <= 1 ; ++k) {
            auto v = certify_via_spectrum(g, p, k, k + 1);
            if (v.satisfied()) {
                ++certified;
                EXPECT_TRUE(check_pseudorandom_exact(g, { *v.certified_epsilon, p, k, k + 1 }).satisfied());
            }
        }
    }
    EXPECT_GT(certified, 0);
}

TEST(LowDegreeVertices, Examples)
{
    EXPECT_TRUE(low_degree_vertices(complete_graph(5), VertexSet(5, { 0, 1 }), 1.5).empty());
    auto star = build_graph(5, { { 0, 1 }, { 0, 2 }, { 0, 3 }, { 0, 4 } });
    EXPECT_EQ(low_degree_vertices(star, VertexSet(5, { 1, 2 }), 0.5), VertexSet(5, { 3, 4 }));
    EXPECT_EQ(low_degree_vertices(star, VertexSet(5, { 1, 2 }), 0.5, DegreeSide::above), VertexSet(5, { 0 }));
}

TEST(LowDegreeVertices, MatchesNaiveScan)
{
    auto g = gnp(16, 0.5, 9);
    Rng rng(1);
    for (int trial = 0 ; trial < 20 ; ++trial) {
        std::vector<Vertex> perm(16);
        std::iota(perm.begin(), perm.end(), 0);
        shuffle(perm, rng);
        VertexSet x = VertexSet::from(16, std::vector<Vertex>(perm.begin(), perm.begin() + 8));
        double threshold = 0.9 * 0.5 * 8;
        VertexSet naive(16);
        for (int v = 0 ; v < 16 ; ++v) {
            if (x.contains(v))
                continue;
            int d = 0;
            for (int u = 0 ; u < 16 ; ++u)
                d += x.contains(u) && g.adjacent(u, v);
            if (d < threshold)
                naive.set(v);
        }
        EXPECT_EQ(low_degree_vertices(g, x, threshold), naive);
    }
}

TEST(ConnectedTuple, CompleteGraph)
{
    auto g = complete_graph(10);
    VertexSet x = VertexSet::full(10) - VertexSet(10, { 0, 1 });
    EXPECT_TRUE(is_connected_tuple(g, VertexTuple{ 0, 1 }, x, 1.0, 1.0));
}

TEST(ConnectedTuple, NonCliqueFails)
{
    auto g = build_graph(6, { { 0, 2 }, { 1, 2 }, { 0, 3 }, { 1, 3 } });
    EXPECT_FALSE(is_connected_tuple(g, VertexTuple{ 0, 1 }, VertexSet(6, { 2, 3, 4, 5 }), 1e-6, 0.5));
}

TEST(ConnectedTuple, MatchesDirectFormula)
{
    auto g = gnp(400, 0.3, 4);
    Rng rng(8);
    int checked = 0;
    for (int trial = 0 ; trial < 200 && checked < 40 ; ++trial) {
        auto a = static_cast<Vertex>(rng.below(400)), b = static_cast<Vertex>(rng.below(400));
        if (a == b || ! g.adjacent(a, b))
            continue;
        ++checked;
        VertexSet x = VertexSet::full(400);
        x.reset(a);
        x.reset(b);
        int d2 = 0, d12 = 0;
        for (int v = 0 ; v < 400 ; ++v)
            if (x.contains(v) && g.adjacent(b, v)) {
                ++d2;
                d12 += g.adjacent(a, v);
            }
        for (double rho : { 0.125, 0.5, 1.0 }) {
            bool expect = d2 >= rho * 0.15 * 398 && d12 >= rho * 0.15 * 0.15 * 398;
            EXPECT_EQ(is_connected_tuple(g, VertexTuple{ a, b }, x, rho, 0.3), expect);
        }
    }
    EXPECT_EQ(checked, 40);
}

TEST(ConnectednessWitness, CompleteGraph)
{
    auto g = complete_graph(10);
    VertexSet x = VertexSet::full(10) - VertexSet(10, { 0, 1 });
    VertexTuple t{ 0, 1 };
    auto w = connectedness_witness(g, t, x, 1.0, 1.0);
    EXPECT_EQ(w.y.count(), 4);
    EXPECT_TRUE(w.y.is_subset_of(x));
}

TEST(ConnectednessWitness, QuotasAndBoundary)
{
    auto g = gnp(500, 0.3, 6);
    Rng rng(2);
    int done = 0;
    for (int trial = 0 ; trial < 500 && done < 20 ; ++trial) {
        auto a = static_cast<Vertex>(rng.below(500)), b = static_cast<Vertex>(rng.below(500));
        if (a == b || ! g.adjacent(a, b))
            continue;
        VertexSet x = VertexSet::full(500) - VertexSet(500, { a, b });
        VertexTuple t{ a, b };
        if (! is_connected_tuple(g, t, x, 0.5, 0.3))
            continue;
        ++done;
        auto w = connectedness_witness(g, t, x, 0.5, 0.3);
        EXPECT_EQ(w.y.count(), static_cast<int>(std::ceil(0.5 * 0.15 * 498)));
        EXPECT_TRUE(w.y.is_subset_of(x));
        // Recount directly from adjacency.
        int inner = 0, outer = 0;
        w.y.for_each([&] (Vertex v) {
            outer += g.adjacent(b, v);
            inner += g.adjacent(a, v) && g.adjacent(b, v);
        });
        EXPECT_GE(outer, 0.5 * 0.15 * 498);
        EXPECT_GE(inner, 0.5 * 0.15 * 0.15 * 498);
        // Removing inner members down to the quota keeps the innermost condition, one more breaks it.
        auto inner_quota = static_cast<int>(std::ceil(0.5 * 0.15 * 0.15 * 498));
        VertexSet y = w.y;
        int excess = inner - inner_quota;
        (w.y & w.nested[0]).for_each([&] (Vertex v) {
            if (excess > 0) {
                y.reset(v);
                --excess;
            }
        });
        EXPECT_EQ(common_degree(g, t, y), inner_quota);
        y.reset((y & w.nested[0]).first());
        EXPECT_LT(common_degree(g, t, y), 0.5 * 0.15 * 0.15 * 498);
    }
    EXPECT_EQ(done, 20);
}

TEST(ConnectednessWitness, ReportsFailingSuffix)
{
    auto g = build_graph(6, { { 0, 1 }, { 1, 2 }, { 1, 3 } });
    try {
        (void) connectedness_witness(g, VertexTuple{ 0, 1 }, VertexSet(6, { 2, 3, 4, 5 }), 0.5, 1.0);
        FAIL();
    }
    catch (const ConnectednessError & e) {
        EXPECT_EQ(e.index(), 1);
    }
}
