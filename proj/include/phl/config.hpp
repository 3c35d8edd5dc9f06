// config.hpp — JSON run configuration for the command-line tool and bindings

#pragma once

#include <string>

#include "phl/current.hpp"
#include "phl/oracle.hpp"

namespace phl {

// Inclusive linear energy grid for transmission maps.
struct EnergyAxis {
    double lo = 0.0;
    double hi = 0.0;
    int points = 0;

    std::vector<double> values() const;
    void validate(const char* what) const;
};

struct RunConfig {
    TransportProblem problem;
    OracleOptions oracle;
    double oracle_max_deviation = 0.10; // accepted |sim - analytic| / |analytic|

    bool has_transmission_grid = false;
    EnergyAxis grid_left, grid_right;

    std::string output_path; // empty = stdout
    std::string format = "json";

    bool ir_waiver_used = false; // any lead carries allow_ir_divergence
};

// Parse a configuration document; throws ConfigError with a key path on any
// malformed, missing or unknown field.
RunConfig parse_config(const std::string& json_text);

// Read and parse a configuration file.
RunConfig load_config(const std::string& path);

} // namespace phl
