// modemflow: max-min traffic engineering for interconnected modem banks plus
// a queueing simulator for the resulting routing tables.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "modemflow/errors.hpp"
#include "modemflow/maxmin_lp.hpp"
#include "modemflow/pathgen.hpp"
#include "modemflow/queuesim.hpp"
#include "modemflow/report.hpp"
#include "modemflow/scenario.hpp"
#include "modemflow/textio.hpp"

namespace mf = modemflow;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitInfeasible = 4;
constexpr int kExitRuntime = 5;

struct CommonOpts {
    std::string config_path;
    std::string routing_path;
    std::string out_path;
    std::string format = "csv";
    std::optional<std::uint64_t> seed;
    std::optional<int> reps;
};

mf::Scenario load_and_validate(const std::string& config_path, bool print_warnings) {
    mf::Scenario scenario = mf::load_scenario_file(config_path);
    const mf::ValidationReport report = mf::validate_scenario(scenario);
    for (const std::string& w : report.warnings) {
        if (print_warnings) {
            std::cerr << "warning: " << w << "\n";
        }
    }
    if (!report.ok()) {
        std::string msg = "scenario invalid:";
        for (const std::string& v : report.violations) {
            msg += "\n  - " + v;
        }
        throw mf::InvalidScenarioError(msg);
    }
    return scenario;
}

std::vector<mf::PathSet> enumerate_all(const mf::PayloadGraph& graph,
                                       const std::vector<mf::Commodity>& commodities,
                                       int max_hops) {
    std::vector<mf::PathSet> pathsets;
    pathsets.reserve(commodities.size());
    for (const mf::Commodity& c : commodities) {
        pathsets.push_back(mf::enumerate_paths(graph, c, max_hops));
    }
    return pathsets;
}

// Inline solving funnels the table through its text form so a run with
// --routing <file written by solve> is bit-identical to an inline run.
mf::RoutingTable quantized(const mf::RoutingTable& table, const mf::PayloadGraph& graph,
                           const std::vector<mf::Commodity>& commodities) {
    std::stringstream buffer;
    mf::write_routing_table(buffer, table);
    return mf::read_routing_table(buffer, graph, commodities);
}

mf::RoutingTable routing_for(const mf::Scenario& scenario, const mf::PayloadGraph& graph,
                             const std::vector<mf::Commodity>& commodities,
                             const std::string& routing_path) {
    if (scenario.mode == mf::Mode::baseline) {
        return {};
    }
    if (!routing_path.empty()) {
        std::ifstream in(routing_path);
        if (!in) {
            throw mf::ParseError("cannot open routing table '" + routing_path + "'");
        }
        return mf::read_routing_table(in, graph, commodities);
    }
    const auto pathsets = enumerate_all(graph, commodities, scenario.max_hops);
    const mf::RoutingSolution solution = mf::solve_maxmin(graph, commodities, pathsets);
    return quantized(mf::flows_to_routing_table(solution, commodities, pathsets), graph,
                     commodities);
}

void append_csv(const std::string& path, const std::string& header,
                const std::string& rows) {
    const bool fresh =
        !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
    std::ofstream out(path, std::ios::app);
    if (!out) {
        throw mf::Error("cannot open output file '" + path + "'");
    }
    if (fresh) {
        out << header;
    }
    out << rows;
}

int cmd_solve(const CommonOpts& opts, const std::string& paths_dump) {
    const mf::Scenario scenario = load_and_validate(opts.config_path, true);
    if (scenario.mode == mf::Mode::baseline) {
        throw mf::InvalidScenarioError(
            "baseline mode has a single station; there is nothing to solve");
    }
    const mf::PayloadGraph graph = mf::build_graph(scenario);
    const auto commodities = mf::make_commodities(scenario);
    const auto pathsets = enumerate_all(graph, commodities, scenario.max_hops);

    if (!paths_dump.empty()) {
        std::ofstream out(paths_dump);
        if (!out) {
            throw mf::Error("cannot open path dump file '" + paths_dump + "'");
        }
        for (const mf::PathSet& ps : pathsets) {
            mf::dump_paths(out, ps);
        }
    }

    const mf::RoutingSolution solution = mf::solve_maxmin(graph, commodities, pathsets);
    const mf::RoutingTable table =
        mf::flows_to_routing_table(solution, commodities, pathsets);

    const std::string out_path = opts.out_path.empty() ? "routing_table.txt" : opts.out_path;
    std::ofstream out(out_path);
    if (!out) {
        throw mf::Error("cannot open output file '" + out_path + "'");
    }
    mf::write_routing_table(out, table);

    std::cout << "objective z* = " << mf::textio::format_double(solution.objective_bps)
              << " bps (minimum residual capacity)\n";
    if (solution.min_residual_edge >= 0) {
        const mf::Edge& e = graph.edges()[solution.min_residual_edge];
        std::cout << "binding edge " << e.from << "->" << e.to << "\n";
    }
    std::cout << "routing table written to " << out_path << "\n";
    std::cout << "per-edge residuals (bps):\n";
    const auto res = mf::residuals(graph, solution);
    for (std::size_t e = 0; e < res.size(); ++e) {
        const mf::Edge& edge = graph.edges()[e];
        std::cout << "  " << edge.from << "->" << edge.to << " "
                  << mf::textio::format_double(res[e]) << "\n";
    }
    return kExitOk;
}

int cmd_run(const CommonOpts& opts) {
    const mf::Scenario scenario = load_and_validate(opts.config_path, true);
    const mf::PayloadGraph graph = mf::build_graph(scenario);
    const auto commodities = mf::make_commodities(scenario);
    const mf::RoutingTable routing =
        routing_for(scenario, graph, commodities, opts.routing_path);

    const std::uint64_t seed = opts.seed.value_or(scenario.seed);
    const int reps = opts.reps.value_or(scenario.reps);
    const mf::MetricsReport report =
        mf::run_replications(scenario, graph, routing, reps, seed);

    mf::report::print_summary(std::cout, scenario, report);
    if (opts.format == "json") {
        const std::string doc = mf::report::report_json(scenario, report);
        if (opts.out_path.empty()) {
            std::cout << doc << "\n";
        } else {
            std::ofstream out(opts.out_path);
            out << doc << "\n";
        }
    } else if (!opts.out_path.empty()) {
        append_csv(opts.out_path, mf::report::run_csv_header(),
                   mf::report::run_csv_rows(scenario, report));
    } else {
        std::cout << mf::report::run_csv_header()
                  << mf::report::run_csv_rows(scenario, report);
    }
    return kExitOk;
}

void apply_dimension(mf::Scenario& scenario, const std::string& dim, double value) {
    if (dim == "lambda") {
        scenario.lambda_pps = value;
        for (auto& c : scenario.commodities) {
            c.lambda_pps = value;
        }
    } else if (dim == "buffer") {
        scenario.buffer_pkts = static_cast<long long>(value);
    } else if (dim == "link_rate") {
        scenario.link_rate_bps = value;
    } else if (dim == "baseline_multiplier") {
        if (scenario.mode != mf::Mode::baseline) {
            throw mf::InvalidScenarioError(
                "baseline_multiplier sweep requires mode = baseline");
        }
        scenario.baseline_multiplier = static_cast<int>(value);
    } else {
        throw mf::Error("unknown sweep dimension '" + dim + "'");
    }
}

int cmd_sweep(const CommonOpts& opts, const std::string& dim,
              const std::vector<double>& values) {
    if (values.empty()) {
        throw mf::InvalidScenarioError("sweep value list must not be empty");
    }
    const mf::Scenario base = load_and_validate(opts.config_path, false);

    std::string csv = mf::report::sweep_csv_header();
    nlohmann::json points = nlohmann::json::array();
    for (double value : values) {
        mf::Scenario scenario = base;
        std::string error;
        mf::MetricsReport report;
        bool ok = false;
        try {
            apply_dimension(scenario, dim, value);
            const mf::ValidationReport vr = mf::validate_scenario(scenario);
            if (!vr.ok()) {
                throw mf::InvalidScenarioError("invalid point: " + vr.violations.front());
            }
            const mf::PayloadGraph graph = mf::build_graph(scenario);
            const auto commodities = mf::make_commodities(scenario);
            const mf::RoutingTable routing =
                routing_for(scenario, graph, commodities, opts.routing_path);
            report = mf::run_replications(scenario, graph, routing,
                                          opts.reps.value_or(scenario.reps),
                                          opts.seed.value_or(scenario.seed));
            ok = true;
        } catch (const std::exception& e) {
            error = e.what();
        }
        std::cerr << dim << " = " << mf::textio::format_double(value) << ": "
                  << (ok ? "ok" : error) << "\n";
        csv += mf::report::sweep_csv_row(dim, value, scenario, ok ? &report : nullptr,
                                         error);
        if (opts.format == "json") {
            nlohmann::json p;
            p["dimension"] = dim;
            p["value"] = value;
            if (ok) {
                p["report"] = nlohmann::json::parse(mf::report::report_json(scenario, report));
            } else {
                p["error"] = error;
            }
            points.push_back(std::move(p));
        }
    }

    if (opts.format == "json") {
        const std::string doc = points.dump(2);
        if (opts.out_path.empty()) {
            std::cout << doc << "\n";
        } else {
            std::ofstream out(opts.out_path);
            out << doc << "\n";
        }
    } else if (!opts.out_path.empty()) {
        std::ofstream out(opts.out_path);
        if (!out) {
            throw mf::Error("cannot open output file '" + opts.out_path + "'");
        }
        out << csv;
    } else {
        std::cout << csv;
    }
    return kExitOk;
}

int cmd_validate(const std::string& config_path) {
    const mf::Scenario scenario = mf::load_scenario_file(config_path);
    const mf::ValidationReport report = mf::validate_scenario(scenario);
    for (const std::string& w : report.warnings) {
        std::cout << "warning: " << w << "\n";
    }
    if (!report.ok()) {
        for (const std::string& v : report.violations) {
            std::cout << "violation: " << v << "\n";
        }
        return kExitValidation;
    }
    std::cout << "ok\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"max-min routing optimization and queueing simulation for "
                 "interconnected modem-bank payloads"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string paths_dump;
    std::string dim;
    std::vector<double> values;

    auto add_common = [&opts](CLI::App* cmd, bool with_routing) {
        cmd->add_option("--config", opts.config_path, "scenario config file")->required();
        if (with_routing) {
            cmd->add_option("--routing", opts.routing_path,
                            "routing table file (default: solve inline)");
        }
        cmd->add_option("--seed", opts.seed, "override the scenario seed");
        cmd->add_option("--reps", opts.reps, "override the replication count");
        cmd->add_option("--out", opts.out_path, "output file");
        cmd->add_option("--format", opts.format, "csv|json")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    CLI::App* solve = app.add_subcommand("solve", "solve the max-min LP and write the routing table");
    add_common(solve, false);
    solve->add_option("--paths", paths_dump, "also dump the enumerated path sets");

    CLI::App* run = app.add_subcommand("run", "simulate a scenario and report delay and loss");
    add_common(run, true);

    CLI::App* sweep = app.add_subcommand("sweep", "run a scenario across a swept dimension");
    add_common(sweep, true);
    sweep->add_option("--dim", dim, "lambda|buffer|link_rate|baseline_multiplier")
        ->required()
        ->check(CLI::IsMember({"lambda", "buffer", "link_rate", "baseline_multiplier"}));
    sweep->add_option("--values", values, "comma-separated value list")
        ->required()
        ->delimiter(',');

    CLI::App* validate = app.add_subcommand("validate", "check a scenario config");
    validate->add_option("--config", opts.config_path, "scenario config file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) {
            return cmd_solve(opts, paths_dump);
        }
        if (run->parsed()) {
            return cmd_run(opts);
        }
        if (sweep->parsed()) {
            return cmd_sweep(opts, dim, values);
        }
        if (validate->parsed()) {
            return cmd_validate(opts.config_path);
        }
    } catch (const mf::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const mf::InvalidScenarioError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const mf::InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}
