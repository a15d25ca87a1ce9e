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

#ifndef HAMPOW_EMBED_CONFIG_HPP
#define HAMPOW_EMBED_CONFIG_HPP

#include <hampow/errors.hpp>
#include <hampow/graph/graph.hpp>
#include <hampow/pseudo/params.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hampow {

/// Which reservoir graph to build around each reservoir vertex when k = 2.
enum class GadgetKind
{
    /// The 47-vertex construction with three internal connections.
    paper,
    /// The 2k+1 construction (a 2k-vertex k-path inside N(r)); used for every k >= 3.
    compact
};

enum class ConnectStrategy
{
    /// Carved candidate sets plus the exact good-window search.
    layered,
    /// Iterative deepening over the interior length, smallest first.
    shortest,
    /// layered, then shortest if every layered attempt failed.
    automatic
};

inline auto to_string(GadgetKind g) -> std::string
{
    return g == GadgetKind::paper ? "paper" : "compact";
}

inline auto to_string(ConnectStrategy s) -> std::string
{
    switch (s) {
        case ConnectStrategy::layered: return "layered";
        case ConnectStrategy::shortest: return "shortest";
        case ConnectStrategy::automatic: return "auto";
    }
    return "?";
}

/**
 * Parameters for one embedding run.
 *
 * `slack` scales every proof threshold: lower bounds (quotas, typicality
 * floors, minimum sizes and degrees) are multiplied by it, upper bounds and
 * carved-set targets are divided by it. slack = 1 reproduces the proof
 * constants, which are vacuous at desk scale.
 */
struct EmbedConfig
{
    int k = 2;
    double beta = 0.25;
    /// Reservoir-lemma delta; the other lemma deltas derive from it.
    double delta = 0.1;
    /// Working epsilon for typicality floors; unset means the main-theorem bound.
    std::optional<double> epsilon;
    double slack = 1.0;
    std::uint64_t seed = 0;
    int max_retries = 5;
    bool stage_trace = false;

    /// Density parameter; unset means the edge density of the input graph.
    std::optional<double> p;
    /// Reservoir size override. 0 runs without a reservoir (only viable when the extension closes the cycle).
    std::optional<int> reservoir_size;
    /// Leftover target for the extension phase.
    std::optional<int> leftover_size;
    GadgetKind gadget = GadgetKind::paper;
    ConnectStrategy connect_strategy = ConnectStrategy::layered;
    /// Node budget per shortest-connection search.
    long long search_budget = 200000;
    /// Nodes the extension phase may spend backtracking after a stall; 0 keeps it purely greedy.
    long long extension_budget = 1000000;

    auto validate() const -> void
    {
        if (k < 2)
            throw PreconditionError("EmbedConfig: k must be at least 2");
        if (! (beta > 0.0 && beta < 0.5))
            throw PreconditionError("EmbedConfig: beta must lie in (0, 1/2)");
        if (! (delta > 0.0 && delta < 0.25))
            throw PreconditionError("EmbedConfig: delta must lie in (0, 1/4)");
        if (! (slack > 0.0))
            throw PreconditionError("EmbedConfig: slack must be positive");
        if (epsilon && ! (*epsilon > 0.0 && *epsilon < 1.0))
            throw PreconditionError("EmbedConfig: epsilon must lie in (0, 1)");
        if (p && ! (*p > 0.0 && *p <= 1.0))
            throw PreconditionError("EmbedConfig: p must lie in (0, 1]");
        if (max_retries < 1)
            throw PreconditionError("EmbedConfig: max_retries must be positive");
        if (reservoir_size && *reservoir_size < 0)
            throw PreconditionError("EmbedConfig: negative reservoir size");
        if (leftover_size && *leftover_size < 0)
            throw PreconditionError("EmbedConfig: negative leftover size");
        if (extension_budget < 0)
            throw PreconditionError("EmbedConfig: negative extension budget");
    }

    auto delta_cov() const -> double { return delta * delta / (1e4 * k); }
    auto delta_onestep() const -> double { return delta_cov() / (200.0 * k); }
    auto delta_conn() const -> double { return beta / 16.0 * delta * delta / (400.0 * k); }

    auto working_epsilon() const -> double
    {
        if (epsilon)
            return *epsilon;
        return beta * delta * delta / (7.0 * 6400.0 * k * k * std::pow(2.0, k));
    }

    auto density(const Graph & g) const -> double { return p ? *p : g.density(); }

    /// A lower-bound threshold after slack.
    auto floor_threshold(double proof_value) const -> double { return proof_value * slack; }
    /// An upper-bound threshold after slack.
    auto ceiling_threshold(double proof_value) const -> double { return proof_value / slack; }
};

/// ceil for lower-bounded quotas, tolerant of representation error.
inline auto quota_count(double x) -> int
{
    return x <= 0.0 ? 0 : static_cast<int>(std::ceil(x - discrepancy_tolerance));
}

/// floor for carved sizes.
inline auto carve_count(double x) -> int
{
    return x <= 0.0 ? 0 : static_cast<int>(std::floor(x + discrepancy_tolerance));
}

enum class Stage
{
    reservoir_set,
    reservoir_path,
    extension,
    covering,
    connection_1,
    connection_2,
    bypass,
    assembly
};

inline auto to_string(Stage s) -> std::string
{
    switch (s) {
        case Stage::reservoir_set: return "reservoir_set";
        case Stage::reservoir_path: return "reservoir_path";
        case Stage::extension: return "extension";
        case Stage::covering: return "covering";
        case Stage::connection_1: return "connection_1";
        case Stage::connection_2: return "connection_2";
        case Stage::bypass: return "bypass";
        case Stage::assembly: return "assembly";
    }
    return "?";
}

struct StageReport
{
    Stage stage = Stage::assembly;
    bool ok = true;
    std::string outcome;
    /// Name of the first candidate set found empty, if any.
    std::string empty_set;
    /// Segment or step index for stages that iterate; -1 otherwise.
    int index = -1;
    /// Named sizes and counts, in the order they were recorded.
    std::vector<std::pair<std::string, long long>> diagnostics;

    auto add(std::string name, long long value) -> StageReport &
    {
        diagnostics.emplace_back(std::move(name), value);
        return *this;
    }

    auto value(const std::string & name) const -> std::optional<long long>
    {
        for (const auto & [key, v] : diagnostics)
            if (key == name)
                return v;
        return std::nullopt;
    }
};

inline auto describe(const StageReport & r) -> std::string
{
    std::string s = "stage " + to_string(r.stage) + ": " + r.outcome;
    if (r.index >= 0)
        s += " (index " + std::to_string(r.index) + ")";
    if (! r.empty_set.empty())
        s += " [empty: " + r.empty_set + "]";
    return s;
}

/// An algorithmic stage could not complete; carries the failure report.
class StageError : public std::runtime_error
{
    private:
        StageReport _report;

    public:
        explicit StageError(StageReport report) :
            std::runtime_error(describe(report)),
            _report(std::move(report))
        {
            _report.ok = false;
        }

        auto report() const -> const StageReport & { return _report; }

        /// Same failure attributed to an enclosing stage.
        auto restaged(Stage stage, int index = -1) const -> StageError
        {
            StageReport r = _report;
            r.stage = stage;
            if (index >= 0)
                r.index = index;
            return StageError(std::move(r));
        }
};

inline auto stage_failure(Stage stage, std::string outcome, std::string empty_set = {}) -> StageReport
{
    StageReport r;
    r.stage = stage;
    r.ok = false;
    r.outcome = std::move(outcome);
    r.empty_set = std::move(empty_set);
    return r;
}

}

#endif
