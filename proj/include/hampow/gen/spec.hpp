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


#ifndef HAMPOW_GEN_SPEC_HPP
#define HAMPOW_GEN_SPEC_HPP

#include <hampow/gen/generators.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace hampow {

enum class GenKind
{
    gnp,
    paley,
    cycle_power,
    complete,
    subgroup_sum
};

inline auto to_string(GenKind k) -> std::string
{
    switch (k) {
        case GenKind::gnp: return "gnp";
        case GenKind::paley: return "paley";
        case GenKind::cycle_power: return "cycle_power";
        case GenKind::complete: return "complete";
        case GenKind::subgroup_sum: return "subgroup_sum";
    }
    return "?";
}

inline auto parse_gen_kind(const std::string & s) -> GenKind
{
    for (auto k : { GenKind::gnp, GenKind::paley, GenKind::cycle_power, GenKind::complete, GenKind::subgroup_sum })
        if (to_string(k) == s)
            return k;
    throw PreconditionError("unknown graph kind: " + s);
}

/// A reproducible graph description. Only the fields of `kind` are read.
struct GenSpec
{
    GenKind kind = GenKind::gnp;
    int n = 0;
    double p = 0.0;
    std::uint64_t seed = 0;
    /// Prime for paley and subgroup_sum.
    int q = 0;
    /// Power for cycle_power.
    int k = 0;
    /// Subgroup generator for subgroup_sum; 0 selects the quadratic residues.
    int generator = 0;

    auto subgroup() const -> std::vector<int>
    {
        return generator == 0 ? quadratic_residues(q) : generated_subgroup(q, generator);
    }
};

inline auto generate(const GenSpec & s) -> Graph
{
    switch (s.kind) {
        case GenKind::gnp: return gnp(s.n, s.p, s.seed);
        case GenKind::paley: return paley(s.q);
        case GenKind::cycle_power: return cycle_power(s.n, s.k);
        case GenKind::complete: return complete_graph(s.n);
        case GenKind::subgroup_sum: return subgroup_sum_graph(s.q, s.subgroup());
    }
    throw PreconditionError("generate: unknown kind");
}

}

#endif
