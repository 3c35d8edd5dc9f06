// main.cpp — photon_landauer command-line tool
//
// Subcommands:
//   current       cycle-averaged currents and their decomposition
//   sweep         the same breakdown across a parameter axis
//   transmission  kernel map on the configured energy grid
//   oracle        analytic result vs the time-domain covariance simulation
//
// Exit codes: 0 success, 2 configuration/usage error, 3 numerical failure,
// 4 oracle deviation beyond the configured bound.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "phl/config.hpp"
#include "phl/output.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitMismatch = 4;

struct CommonArgs {
    std::string config_path;
    std::string output_path; // overrides the config
    std::string format;      // overrides the config
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "JSON configuration file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--output", args.output_path, "output file (default: stdout)");
    cmd->add_option("--format", args.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
}

void write_document(const CommonArgs& args, const phl::RunConfig& cfg, const std::string& doc) {
    const std::string path = !args.output_path.empty() ? args.output_path : cfg.output_path;
    if (path.empty()) {
        std::cout << doc;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw phl::ConfigError("cannot open output file '" + path + "'");
    out << doc;
}

phl::RunConfig load(const CommonArgs& args) {
    phl::RunConfig cfg = phl::load_config(args.config_path);
    if (!args.format.empty())
        cfg.format = args.format;
    if (cfg.ir_waiver_used)
        std::cerr << "warning: a lead waives the infrared regularity check; transport "
                     "integrals may diverge\n";
    return cfg;
}

int run_current(const CommonArgs& args) {
    phl::RunConfig cfg = load(args);
    const phl::CurrentBreakdown b = phl::current_right(cfg.problem);
    write_document(args, cfg,
                   cfg.format == "csv" ? phl::breakdown_csv(b) : phl::breakdown_json(b));
    return kExitOk;
}

int run_sweep(const CommonArgs& args, const std::string& axis, double from, double to, int steps) {
    phl::RunConfig cfg = load(args);
    const phl::SweepAxis ax = phl::sweep_axis_from_name(axis);
    const auto points = phl::sweep(cfg.problem, ax, from, to, steps);
    write_document(args, cfg,
                   cfg.format == "csv" ? phl::sweep_csv(phl::sweep_axis_name(ax), points)
                                       : phl::sweep_json(phl::sweep_axis_name(ax), points));
    return kExitOk;
}

int run_transmission(const CommonArgs& args) {
    phl::RunConfig cfg = load(args);
    if (!cfg.has_transmission_grid)
        throw phl::ConfigError("config: the transmission command requires a transmission_grid block");
    const auto samples = phl::transmission_map(cfg.problem.kernel, cfg.grid_left.values(),
                                               cfg.grid_right.values());
    write_document(args, cfg,
                   cfg.format == "csv" ? phl::transmission_csv(samples)
                                       : phl::transmission_json(samples));
    return kExitOk;
}

int run_oracle(const CommonArgs& args) {
    phl::RunConfig cfg = load(args);
    const phl::OracleComparison cmp = phl::compare(cfg.problem, cfg.oracle);
    write_document(args, cfg,
                   cfg.format == "csv" ? phl::comparison_csv(cmp) : phl::comparison_json(cmp));
    if (!cmp.physicality_ok) {
        std::cerr << "error: simulated state violates the physicality bound (margin "
                  << phl::format_double(cmp.min_physicality_margin) << ")\n";
        return kExitNumerical;
    }
    if (cmp.relative_deviation > cfg.oracle_max_deviation) {
        std::cerr << "error: oracle deviation " << phl::format_double(cmp.relative_deviation)
                  << " exceeds the accepted bound "
                  << phl::format_double(cfg.oracle_max_deviation) << "\n";
        return kExitMismatch;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cycle-averaged photon transport between parametrically coupled leads"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string sweep_axis;
    double sweep_from = 0.0, sweep_to = 0.0;
    int sweep_steps = 0;

    CLI::App* current = app.add_subcommand("current", "compute the current breakdown");
    add_common(current, args);

    CLI::App* sweep = app.add_subcommand("sweep", "sweep the breakdown along a parameter axis");
    add_common(sweep, args);
    sweep->add_option("--axis", sweep_axis, "pump_frequency, temperature or coupling_scale")
        ->required();
    sweep->add_option("--from", sweep_from, "first axis value")->required();
    sweep->add_option("--to", sweep_to, "last axis value")->required();
    sweep->add_option("--steps", sweep_steps, "number of points")->required();

    CLI::App* transmission =
        app.add_subcommand("transmission", "tabulate the transmission kernel");
    add_common(transmission, args);

    CLI::App* oracle =
        app.add_subcommand("oracle", "validate against the time-domain covariance oracle");
    add_common(oracle, args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (current->parsed())
            return run_current(args);
        if (sweep->parsed())
            return run_sweep(args, sweep_axis, sweep_from, sweep_to, sweep_steps);
        if (transmission->parsed())
            return run_transmission(args);
        return run_oracle(args);
    } catch (const phl::NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const phl::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const phl::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
