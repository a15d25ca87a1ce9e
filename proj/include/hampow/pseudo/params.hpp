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

#ifndef HAMPOW_PSEUDO_PARAMS_HPP
#define HAMPOW_PSEUDO_PARAMS_HPP

#include <hampow/errors.hpp>
#include <hampow/graph/vertex_set.hpp>

#include <cmath>
#include <optional>
#include <string>

namespace hampow {

/// Absolute tolerance applied on top of exact integer edge counts.
inline constexpr double discrepancy_tolerance = 1e-9;

struct PseudoParams
{
    double epsilon = 0.1;
    double p = 0.5;
    int k = 0;
    int l = 0;

    auto validate() const -> void
    {
        if (! (epsilon > 0.0))
            throw PreconditionError("PseudoParams: epsilon must be positive");
        if (! (p > 0.0 && p < 1.0))
            throw PreconditionError("PseudoParams: p must lie in (0,1)");
        if (k < 0 || l < 0 || k > l)
            throw PreconditionError("PseudoParams: need 0 <= k <= l");
    }

    /// Smallest admissible |X|: ceil(eps p^k n).
    auto min_x(int n) const -> int { return static_cast<int>(std::ceil(epsilon * std::pow(p, k) * n - discrepancy_tolerance)); }

    /// Smallest admissible |Y|: ceil(eps p^l n).
    auto min_y(int n) const -> int { return static_cast<int>(std::ceil(epsilon * std::pow(p, l) * n - discrepancy_tolerance)); }
};

/// p^l n > 1/eps, the standing density assumption for the pseudorandom regime.
inline auto implied_density(const PseudoParams & params, int n) -> bool
{
    return std::pow(params.p, params.l) * n > 1.0 / params.epsilon;
}

enum class VerdictStatus
{
    satisfied,
    violated,
    undetermined
};

inline auto to_string(VerdictStatus s) -> std::string
{
    switch (s) {
        case VerdictStatus::satisfied: return "satisfied";
        case VerdictStatus::violated: return "violated";
        case VerdictStatus::undetermined: return "undetermined";
    }
    return "?";
}

/// A disjoint pair whose edge count misses the required window.
struct DiscrepancyWitness
{
    VertexSet x;
    VertexSet y;
    long long observed = 0;
    double expected = 0.0;
    double bound = 0.0;
};

struct Verdict
{
    VerdictStatus status = VerdictStatus::undetermined;
    std::optional<DiscrepancyWitness> witness;
    // Spectral certificates only.
    std::optional<double> lambda;
    std::optional<double> certified_epsilon;
    std::string detail;

    auto satisfied() const -> bool { return status == VerdictStatus::satisfied; }
    auto violated() const -> bool { return status == VerdictStatus::violated; }
};

}

#endif
