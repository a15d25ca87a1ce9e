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


#ifndef HAMPOW_CLI_CLI_HPP
#define HAMPOW_CLI_CLI_HPP

#include <hampow/count/counting.hpp>
#include <hampow/embed/pipeline.hpp>
#include <hampow/gen/spec.hpp>
#include <hampow/gen/sum_ordering.hpp>
#include <hampow/io/files.hpp>
#include <hampow/io/record.hpp>
#include <hampow/pseudo/discrepancy.hpp>
#include <hampow/pseudo/spectral.hpp>

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace hampow::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_failure = 2;

namespace detail {

    struct EmbedOptions
    {
        EmbedConfig cfg;
        std::optional<double> epsilon;
        std::optional<double> p;
        std::optional<int> reservoir_size;
        std::optional<int> leftover_size;
        std::string gadget = "paper";
        std::string connect = "layered";

        auto build() const -> EmbedConfig
        {
            EmbedConfig c = cfg;
            c.epsilon = epsilon;
            c.p = p;
            c.reservoir_size = reservoir_size;
            c.leftover_size = leftover_size;
            c.gadget = parse_gadget(gadget);
            c.connect_strategy = parse_connect_strategy(connect);
            c.validate();
            return c;
        }
    };

    // A sweep sets the seed and p per cell, so `grid` leaves those flags out.
    inline auto add_embed_options(CLI::App * app, EmbedOptions & o, bool grid = false) -> void
    {
        app->add_option("--k", o.cfg.k, "power of the Hamilton cycle")->capture_default_str();
        app->add_option("--beta", o.cfg.beta, "minimum-degree coefficient, in (0, 1/2)")->capture_default_str();
        app->add_option("--delta", o.cfg.delta, "reservoir delta, in (0, 1/4)")->capture_default_str();
        app->add_option("--slack", o.cfg.slack, "multiplier on every proof threshold")->capture_default_str();
        if (! grid) {
            app->add_option("--seed", o.cfg.seed, "seed for every random choice")->capture_default_str();
            app->add_option("--p", o.p, "density parameter (default: edge density)");
        }
        app->add_option("--epsilon", o.epsilon, "working epsilon for typicality floors");
        app->add_option("--reservoir-size", o.reservoir_size, "fix |R'| (0 runs without a reservoir)");
        app->add_option("--leftover-size", o.leftover_size, "leftover target of the extension phase");
        app->add_option("--gadget", o.gadget, "reservoir graph for k = 2")->check(CLI::IsMember({ "paper", "compact" }))
                ->capture_default_str();
        app->add_option("--connect", o.connect, "connection search")->check(CLI::IsMember({ "layered", "shortest", "auto" }))
                ->capture_default_str();
        app->add_option("--max-retries", o.cfg.max_retries, "resampling attempts per stage")->capture_default_str();
        app->add_option("--search-budget", o.cfg.search_budget, "node budget per shortest connection")->capture_default_str();
        app->add_option("--extension-budget", o.cfg.extension_budget, "backtracking budget of the extension")
                ->capture_default_str();
    }

    inline auto hash_text(const Graph & g) -> std::string
    {
        std::ostringstream s;
        s << std::hex << std::setw(16) << std::setfill('0') << g.hash();
        return s.str();
    }

    inline auto elapsed_ms(std::chrono::steady_clock::time_point start) -> double
    {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }

    inline auto write_json(const std::string & path, const json & j) -> void
    {
        hampow::detail::write_text(path, j.dump(2) + "\n");
    }

    inline auto print_trace(std::ostream & out, const std::vector<StageReport> & trace) -> void
    {
        for (const auto & r : trace) {
            out << "  " << describe(r);
            for (const auto & [name, value] : r.diagnostics)
                out << " " << name << "=" << value;
            out << "\n";
        }
    }

    /// Why `order` is not a Hamilton k-cycle (or spanning k-path), empty if it is one.
    inline auto order_problem(const Graph & g, const std::vector<Vertex> & order, int k, bool cyclic) -> std::string
    {
        VertexSet seen(g.order());
        for (Vertex v : order) {
            if (v < 0 || v >= g.order())
                return "vertex " + std::to_string(v) + " out of range";
            if (seen.contains(v))
                return "vertex " + std::to_string(v) + " repeated";
            seen.set(v);
        }
        if (static_cast<int>(order.size()) != g.order())
            return "not spanning: " + std::to_string(order.size()) + " of " + std::to_string(g.order()) + " vertices";
        if (! verify_kpower(g, order, k, cyclic))
            return std::string("not a ") + (cyclic ? "cycle" : "path") + " power (k=" + std::to_string(k) + "): some pair within distance k is not adjacent";
        return {};
    }

    inline auto split_doubles(const std::string & s) -> std::vector<double>
    {
        std::vector<double> out;
        std::stringstream in(s);
        for (std::string item ; std::getline(in, item, ',') ; ) {
            std::size_t used = 0;
            double v = std::stod(item, &used);
            if (used != item.size())
                throw CLI::ValidationError("bad number: " + item);
            out.push_back(v);
        }
        return out;
    }

}

/// One sweep cell and its result.
struct SweepRow
{
    int n = 0;
    std::string p;
    std::uint64_t seed = 0;
    std::string outcome;
    std::string stage;
    double wall_ms = 0.0;
    bool verified = false;
};

inline auto sweep_csv_header() -> std::string
{
    return "n,p,seed,outcome,stage,wall_ms,cycle_verified\n";
}

inline auto sweep_csv_row(const SweepRow & r) -> std::string
{
    std::ostringstream s;
    s << r.n << "," << r.p << "," << r.seed << "," << r.outcome << "," << r.stage << ","
      << std::fixed << std::setprecision(1) << r.wall_ms << "," << (r.verified ? "true" : "false") << "\n";
    return s.str();
}

/**
 * Runs one embedding per (n, p, seed) cell of G(n,p) with cfg.seed = seed,
 * on `jobs` threads; rows come back in grid order (n, then p, then seed).
 */
inline auto run_sweep(const std::vector<int> & ns, const std::vector<std::string> & ps, const std::vector<std::uint64_t> & seeds,
        const EmbedConfig & cfg, int jobs) -> std::vector<SweepRow>
{
    std::vector<SweepRow> rows;
    for (int n : ns)
        for (const auto & p : ps)
            for (auto seed : seeds) {
                SweepRow r;
                r.n = n;
                r.p = p;
                r.seed = seed;
                rows.push_back(r);
            }
    std::atomic<std::size_t> next{ 0 };
    auto work = [&] {
        for (std::size_t i ; (i = next++) < rows.size() ; ) {
            SweepRow & r = rows[i];
            auto start = std::chrono::steady_clock::now();
            Graph g = gnp(r.n, std::stod(r.p), r.seed);
            EmbedConfig c = cfg;
            c.seed = r.seed;
            auto result = embed_with_report(g, c);
            r.wall_ms = detail::elapsed_ms(start);
            r.outcome = outcome_label(result.ok, result.trace);
            r.stage = result.trace.empty() ? "none" : to_string(result.trace.back().stage);
            r.verified = result.ok && is_hamilton_kcycle(g, result.cycle, c.k);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1 ; t < jobs ; ++t)
        pool.emplace_back(work);
    work();
    for (auto & t : pool)
        t.join();
    return rows;
}

/**
 * The command-line entry point. Exit codes: 0 success, 1 usage or file
 * error, 2 algorithmic failure (stage failure, invalid cycle, violated
 * check, ordering not found).
 */
inline auto run_cli(int argc, const char * const * argv, std::ostream & out, std::ostream & err) -> int
{
    CLI::App app{ "Hamilton cycle powers in pseudorandom graphs", "hampow" };
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "help for every subcommand");

    // gen
    auto * gen = app.add_subcommand("gen", "write a generated graph as an edge list");
    std::string gen_kind = "gnp";
    GenSpec spec;
    bool gen_qr = false;
    std::string gen_out;
    gen->add_option("--kind", gen_kind, "graph family")
            ->check(CLI::IsMember({ "gnp", "paley", "cycle_power", "complete", "subgroup_sum" }))->capture_default_str();
    gen->add_option("--n", spec.n, "vertex count");
    gen->add_option("--p", spec.p, "edge probability (gnp)");
    gen->add_option("--seed", spec.seed, "seed (gnp)");
    gen->add_option("--q", spec.q, "prime (paley, subgroup_sum)");
    gen->add_option("--k", spec.k, "power (cycle_power)");
    auto * gen_g = gen->add_option("--generator", spec.generator, "subgroup generator (subgroup_sum)");
    gen->add_flag("--quadratic-residues", gen_qr, "use the quadratic residues (subgroup_sum)")->excludes(gen_g);
    gen->add_option("-o,--output", gen_out, "edge-list path (.gz for gzip)")->required();

    // check
    auto * check = app.add_subcommand("check", "test pseudorandomness of a graph and print the verdict as JSON");
    std::string check_graph;
    std::string check_mode = "sampled";
    double check_eps = 0.1;
    std::optional<double> check_p;
    int check_k = 1;
    int check_l = 1;
    std::optional<double> check_beta;
    long long check_budget = default_sample_budget;
    std::uint64_t check_seed = 1;
    check->add_option("graph", check_graph, "edge-list file")->required();
    check->add_option("--mode", check_mode, "exact, sampled or spectral")
            ->check(CLI::IsMember({ "exact", "sampled", "spectral" }))->capture_default_str();
    check->add_option("--eps", check_eps, "epsilon")->capture_default_str();
    check->add_option("--p", check_p, "density (default: edge density, d/n for spectral)");
    check->add_option("--k", check_k, "exponent of the X size floor")->capture_default_str();
    check->add_option("--l", check_l, "exponent of the Y size floor")->capture_default_str();
    check->add_option("--jumbled-beta", check_beta, "also test (p,beta)-jumbledness");
    check->add_option("--budget", check_budget, "sampled pairs")->capture_default_str();
    check->add_option("--seed", check_seed, "sampling seed")->capture_default_str();

    // embed
    auto * embed = app.add_subcommand("embed", "find the k-th power of a Hamilton cycle");
    std::string embed_graph;
    std::string embed_out;
    std::string embed_record;
    bool embed_trace = false;
    detail::EmbedOptions embed_opts;
    embed->add_option("graph", embed_graph, "edge-list file")->required();
    detail::add_embed_options(embed, embed_opts);
    embed->add_option("-o,--output", embed_out, "cycle order file (default: <graph>.cycle)");
    embed->add_option("--record", embed_record, "RunRecord JSON (default: <graph>.run.json)");
    embed->add_flag("--trace", embed_trace, "print the stage trace");

    // count
    auto * count = app.add_subcommand("count", "lower-bound the number of k-th powers of Hamilton cycles");
    std::string count_graph;
    std::string count_record;
    CountConfig count_cfg;
    detail::EmbedOptions count_opts;
    count->add_option("graph", count_graph, "edge-list file")->required();
    count->add_option("--nu", count_cfg.nu, "nu, in (0,1)")->capture_default_str();
    count->add_option("--epsilon-scale", count_cfg.epsilon_scale, "c in epsilon(n) = c / ln^2 n")->capture_default_str();
    detail::add_embed_options(count, count_opts);
    count->add_option("--record", count_record, "RunRecord JSON");

    // verify
    auto * verify = app.add_subcommand("verify", "check a cycle order file against a graph");
    std::string verify_graph;
    std::string verify_cycle;
    int verify_k = 2;
    bool verify_cyclic = false;
    verify->add_option("graph", verify_graph, "edge-list file")->required();
    verify->add_option("cycle", verify_cycle, "one vertex id per line")->required();
    verify->add_option("--k", verify_k, "power")->capture_default_str();
    verify->add_flag("--cyclic", verify_cyclic, "close the order into a cycle");

    // sweep
    auto * sweep = app.add_subcommand("sweep", "embed over a grid of G(n,p) and write CSV");
    std::vector<int> sweep_n;
    std::string sweep_p;
    std::vector<std::uint64_t> sweep_seeds;
    std::string sweep_out;
    int sweep_jobs = 1;
    detail::EmbedOptions sweep_opts;
    sweep->add_option("--n", sweep_n, "vertex counts")->required()->delimiter(',');
    sweep->add_option("--p", sweep_p, "edge probabilities, comma separated")->required();
    sweep->add_option("--seeds", sweep_seeds, "seeds, one run per seed")->required()->delimiter(',');
    sweep->add_option("-o,--output", sweep_out, "CSV path (default: stdout)");
    sweep->add_option("--jobs", sweep_jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    detail::add_embed_options(sweep, sweep_opts, true);

    // subgroup
    auto * subgroup = app.add_subcommand("subgroup", "order a multiplicative subgroup so that nearby sums stay inside");
    int sub_q = 0;
    int sub_generator = 0;
    bool sub_qr = false;
    detail::EmbedOptions sub_opts;
    subgroup->add_option("--q", sub_q, "prime")->required();
    auto * sub_g = subgroup->add_option("--generator", sub_generator, "generator of the subgroup");
    subgroup->add_flag("--quadratic-residues", sub_qr, "use the quadratic residues")->excludes(sub_g);
    detail::add_embed_options(subgroup, sub_opts);
    sub_opts.cfg.k = 1;

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &) {
        out << app.help();
        return exit_ok;
    }
    catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    }
    catch (const CLI::ParseError & e) {
        err << "error: " << e.what() << "\n\n";
        const CLI::App * where = &app;
        for (auto * sub : app.get_subcommands())
            where = sub;
        err << where->help();
        return exit_usage;
    }

    try {
        if (gen->parsed()) {
            spec.kind = parse_gen_kind(gen_kind);
            if (spec.kind == GenKind::subgroup_sum && ! gen_qr && spec.generator == 0)
                throw PreconditionError("subgroup_sum needs --generator or --quadratic-residues");
            Graph g = generate(spec);
            write_edge_list(gen_out, g);
            out << "wrote " << gen_out << ": n=" << g.order() << " m=" << g.size() << " hash=" << detail::hash_text(g) << "\n";
            return exit_ok;
        }

        if (check->parsed()) {
            Graph g = read_edge_list(check_graph);
            json result;
            result["graph"] = check_graph;
            result["mode"] = check_mode;
            bool violated = false;
            if (check_mode == "spectral") {
                const double p = check_p ? *check_p : static_cast<double>(g.min_degree()) / g.order();
                Verdict v = certify_via_spectrum(g, p, check_k, check_l);
                json j = to_json(v);
                j["eps"] = check_eps;
                if (v.certified_epsilon)
                    j["meets_eps"] = *v.certified_epsilon <= check_eps;
                result["pseudorandom"] = j;
            }
            else {
                PseudoParams params;
                params.epsilon = check_eps;
                params.p = check_p ? *check_p : g.density();
                params.k = check_k;
                params.l = check_l;
                const CheckMode mode = check_mode == "exact" ? CheckMode::exact : CheckMode::sampled;
                Verdict v = check_pseudorandom(g, params, mode, check_budget, check_seed);
                violated = v.violated();
                result["pseudorandom"] = to_json(v);
                result["params"] = { { "eps", params.epsilon }, { "p", params.p }, { "k", params.k }, { "l", params.l } };
            }
            if (check_beta) {
                const double p = check_p ? *check_p : g.density();
                const CheckMode mode = check_mode == "exact" ? CheckMode::exact : CheckMode::sampled;
                Verdict v = check_jumbled(g, p, *check_beta, mode, check_budget, check_seed);
                violated = violated || v.violated();
                result["jumbled"] = to_json(v);
            }
            out << result.dump(2) << "\n";
            return violated ? exit_failure : exit_ok;
        }

        if (embed->parsed()) {
            EmbedConfig cfg = embed_opts.build();
            Graph g = read_edge_list(embed_graph);
            auto start = std::chrono::steady_clock::now();
            auto result = embed_with_report(g, cfg);
            RunRecord rec;
            rec.command = "embed";
            rec.input = { { "path", embed_graph }, { "hash", detail::hash_text(g) } };
            rec.config = to_json(cfg);
            rec.outcome = outcome_label(result.ok, result.trace);
            rec.cycle = result.cycle;
            rec.trace = result.trace;
            rec.wall_ms = detail::elapsed_ms(start);
            rec.seed = cfg.seed;
            const bool verified = result.ok && is_hamilton_kcycle(g, result.cycle, cfg.k);
            detail::write_json(embed_record.empty() ? embed_graph + ".run.json" : embed_record, rec.to_json());
            if (embed_trace)
                detail::print_trace(out, result.trace);
            if (! verified) {
                err << "embedding failed: " << (result.trace.empty() ? std::string("no trace") : describe(result.trace.back()))
                    << "\n";
                return exit_failure;
            }
            const std::string path = embed_out.empty() ? embed_graph + ".cycle" : embed_out;
            write_cycle(path, result.cycle);
            out << "verified Hamilton cycle power (k=" << cfg.k << ") on " << g.order() << " vertices; wrote " << path
                << "\n";
            return exit_ok;
        }

        if (count->parsed()) {
            count_cfg.base = count_opts.build();
            Graph g = read_edge_list(count_graph);
            auto start = std::chrono::steady_clock::now();
            RunRecord rec;
            rec.command = "count";
            rec.input = { { "path", count_graph }, { "hash", detail::hash_text(g) } };
            rec.config = to_json(count_cfg.base);
            rec.config["nu"] = count_cfg.nu;
            rec.config["epsilon_scale"] = count_cfg.epsilon_scale;
            rec.seed = count_cfg.base.seed;
            int code = exit_ok;
            try {
                auto acc = count_lower_bound(g, count_cfg);
                rec.outcome = "ok";
                rec.cycle = acc.witness;
                rec.trace = acc.trace;
                rec.extra = { { "log_count", acc.log_count }, { "log_count_greedy", acc.log_count_greedy },
                        { "log_floor", acc.log_floor }, { "steps", acc.steps }, { "shortfalls", acc.shortfalls },
                        { "reservoir_size", acc.reservoir_size }, { "leftover", acc.leftover }, { "epsilon", acc.epsilon } };
                out << std::setprecision(10) << "log_count " << acc.log_count << "\n"
                    << "log_count_greedy " << acc.log_count_greedy << "\n"
                    << "steps " << acc.steps << "\n"
                    << "shortfalls " << acc.shortfalls << "\n"
                    << "witness";
                for (Vertex v : acc.witness)
                    out << " " << v;
                out << "\n";
            }
            catch (const StageError & e) {
                rec.outcome = "stage:" + to_string(e.report().stage);
                rec.trace = { e.report() };
                err << "counting failed: " << e.what() << "\n";
                code = exit_failure;
            }
            rec.wall_ms = detail::elapsed_ms(start);
            if (! count_record.empty())
                detail::write_json(count_record, rec.to_json());
            return code;
        }

        if (verify->parsed()) {
            Graph g = read_edge_list(verify_graph);
            auto order = read_cycle(verify_cycle);
            if (verify_k < 1)
                throw PreconditionError("--k must be positive");
            auto problem = detail::order_problem(g, order, verify_k, verify_cyclic);
            if (! problem.empty()) {
                err << "invalid: " << problem << "\n";
                return exit_failure;
            }
            out << "valid Hamilton " << (verify_cyclic ? "cycle" : "path") << " power (k=" << verify_k << ")\n";
            return exit_ok;
        }

        if (sweep->parsed()) {
            EmbedConfig cfg = sweep_opts.build();
            auto ps = detail::split_doubles(sweep_p);
            std::vector<std::string> p_text;
            std::stringstream in(sweep_p);
            for (std::string item ; std::getline(in, item, ',') ; )
                p_text.push_back(item);
            for (double p : ps)
                if (! (p >= 0.0 && p <= 1.0))
                    throw PreconditionError("--p values must lie in [0, 1]");
            auto rows = run_sweep(sweep_n, p_text, sweep_seeds, cfg, sweep_jobs);
            std::string csv = sweep_csv_header();
            for (const auto & r : rows)
                csv += sweep_csv_row(r);
            if (sweep_out.empty())
                out << csv;
            else
                hampow::detail::write_text(sweep_out, csv);
            return exit_ok;
        }

        if (subgroup->parsed()) {
            if (! sub_qr && sub_generator == 0)
                throw PreconditionError("subgroup needs --generator or --quadratic-residues");
            EmbedConfig cfg = sub_opts.cfg;
            const int k = cfg.k;
            cfg.k = std::max(k, 2);
            sub_opts.cfg = cfg;
            cfg = sub_opts.build();
            auto elements = sub_qr ? quadratic_residues(sub_q) : generated_subgroup(sub_q, sub_generator);
            auto order = sum_closed_ordering(sub_q, elements, k, cfg);
            if (! order) {
                err << "not found: no ordering of the " << elements.size() << " elements with sums of " << k
                    << " successors in the subgroup\n";
                return exit_failure;
            }
            for (std::size_t i = 0 ; i < order->size() ; ++i)
                out << (i ? " " : "") << (*order)[i];
            out << "\n";
            return exit_ok;
        }
    }
    catch (const FileError & e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const CLI::Error & e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const StageError & e) {
        err << "failed: " << e.what() << "\n";
        return exit_failure;
    }
    catch (const std::invalid_argument & e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}

}

#endif
