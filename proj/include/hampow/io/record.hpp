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


#ifndef HAMPOW_IO_RECORD_HPP
#define HAMPOW_IO_RECORD_HPP

#include <hampow/embed/config.hpp>
#include <hampow/gen/spec.hpp>
#include <hampow/pseudo/params.hpp>

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace hampow {

using json = nlohmann::ordered_json;

inline auto parse_gadget(const std::string & s) -> GadgetKind
{
    if (s == "paper")
        return GadgetKind::paper;
    if (s == "compact")
        return GadgetKind::compact;
    throw PreconditionError("unknown gadget: " + s);
}

inline auto parse_connect_strategy(const std::string & s) -> ConnectStrategy
{
    for (auto c : { ConnectStrategy::layered, ConnectStrategy::shortest, ConnectStrategy::automatic })
        if (to_string(c) == s)
            return c;
    throw PreconditionError("unknown connection strategy: " + s);
}

inline auto to_json(const EmbedConfig & c) -> json
{
    json j;
    j["k"] = c.k;
    j["beta"] = c.beta;
    j["delta"] = c.delta;
    j["epsilon"] = c.epsilon ? json(*c.epsilon) : json(nullptr);
    j["slack"] = c.slack;
    j["seed"] = c.seed;
    j["max_retries"] = c.max_retries;
    j["p"] = c.p ? json(*c.p) : json(nullptr);
    j["reservoir_size"] = c.reservoir_size ? json(*c.reservoir_size) : json(nullptr);
    j["leftover_size"] = c.leftover_size ? json(*c.leftover_size) : json(nullptr);
    j["gadget"] = to_string(c.gadget);
    j["connect"] = to_string(c.connect_strategy);
    j["search_budget"] = c.search_budget;
    j["extension_budget"] = c.extension_budget;
    return j;
}

inline auto embed_config_from_json(const json & j) -> EmbedConfig
{
    EmbedConfig c;
    c.k = j.at("k").get<int>();
    c.beta = j.at("beta").get<double>();
    c.delta = j.at("delta").get<double>();
    if (! j.at("epsilon").is_null())
        c.epsilon = j.at("epsilon").get<double>();
    c.slack = j.at("slack").get<double>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.max_retries = j.at("max_retries").get<int>();
    if (! j.at("p").is_null())
        c.p = j.at("p").get<double>();
    if (! j.at("reservoir_size").is_null())
        c.reservoir_size = j.at("reservoir_size").get<int>();
    if (! j.at("leftover_size").is_null())
        c.leftover_size = j.at("leftover_size").get<int>();
    c.gadget = parse_gadget(j.at("gadget").get<std::string>());
    c.connect_strategy = parse_connect_strategy(j.at("connect").get<std::string>());
    c.search_budget = j.at("search_budget").get<long long>();
    c.extension_budget = j.at("extension_budget").get<long long>();
    return c;
}

inline auto to_json(const GenSpec & s) -> json
{
    json j;
    j["kind"] = to_string(s.kind);
    switch (s.kind) {
        case GenKind::gnp:
            j["n"] = s.n;
            j["p"] = s.p;
            j["seed"] = s.seed;
            break;
        case GenKind::paley:
            j["q"] = s.q;
            break;
        case GenKind::cycle_power:
            j["n"] = s.n;
            j["k"] = s.k;
            break;
        case GenKind::complete:
            j["n"] = s.n;
            break;
        case GenKind::subgroup_sum:
            j["q"] = s.q;
            j["generator"] = s.generator;
            break;
    }
    return j;
}

inline auto to_json(const StageReport & r) -> json
{
    json j;
    j["stage"] = to_string(r.stage);
    j["ok"] = r.ok;
    j["outcome"] = r.outcome;
    if (! r.empty_set.empty())
        j["empty_set"] = r.empty_set;
    if (r.index >= 0)
        j["index"] = r.index;
    json d = json::object();
    for (const auto & [name, value] : r.diagnostics)
        d[name] = value;
    j["diagnostics"] = d;
    return j;
}

inline auto to_json(const Verdict & v) -> json
{
    json j;
    j["status"] = to_string(v.status);
    if (v.witness) {
        j["witness"] = { { "x", v.witness->x.to_vector() }, { "y", v.witness->y.to_vector() },
                { "observed", v.witness->observed }, { "expected", v.witness->expected }, { "bound", v.witness->bound } };
    }
    if (v.lambda)
        j["lambda"] = *v.lambda;
    if (v.certified_epsilon)
        j["certified_epsilon"] = *v.certified_epsilon;
    if (! v.detail.empty())
        j["detail"] = v.detail;
    return j;
}

/// "ok", or "stage:<name>" for the failing stage.
inline auto outcome_label(bool ok, const std::vector<StageReport> & trace) -> std::string
{
    if (ok || trace.empty())
        return ok ? "ok" : "stage:unknown";
    return "stage:" + to_string(trace.back().stage);
}

/// What a CLI run did, enough to replay it.
struct RunRecord
{
    std::string command;
    /// {"path": ...} for a file input, or a GenSpec.
    json input;
    json config;
    std::string outcome;
    std::vector<Vertex> cycle;
    std::vector<StageReport> trace;
    double wall_ms = 0.0;
    std::uint64_t seed = 0;
    /// Command-specific results (counts, bounds).
    json extra = json::object();

    auto to_json() const -> json
    {
        json j;
        j["command"] = command;
        j["input"] = input;
        j["config"] = config;
        j["outcome"] = outcome;
        j["cycle"] = cycle;
        json t = json::array();
        for (const auto & r : trace)
            t.push_back(hampow::to_json(r));
        j["trace"] = t;
        j["wall_ms"] = wall_ms;
        j["seed"] = seed;
        if (! extra.empty())
            j["result"] = extra;
        return j;
    }
};

}

#endif
