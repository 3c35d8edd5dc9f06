// config.cpp — JSON run configuration for the command-line tool and bindings

#include "phl/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

namespace phl {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ConfigError("config: " + path + ": " + msg);
}

void check_keys(const json& j, const std::string& path, const std::set<std::string>& allowed) {
    for (const auto& [key, _] : j.items())
        if (!allowed.count(key))
            fail(path + "." + key, "unknown key");
}

const json& require(const json& j, const std::string& path, const char* key) {
    auto it = j.find(key);
    if (it == j.end())
        fail(path + "." + key, "missing required key");
    return *it;
}

double as_number(const json& j, const std::string& path) {
    if (!j.is_number())
        fail(path, "expected a number");
    return j.get<double>();
}

double number_or(const json& j, const std::string& path, const char* key, double fallback) {
    auto it = j.find(key);
    return it == j.end() ? fallback : as_number(*it, path + "." + key);
}

int as_int(const json& j, const std::string& path) {
    if (!j.is_number_integer())
        fail(path, "expected an integer");
    return j.get<int>();
}

bool bool_or(const json& j, const std::string& path, const char* key, bool fallback) {
    auto it = j.find(key);
    if (it == j.end())
        return fallback;
    if (!it->is_boolean())
        fail(path + "." + key, "expected a boolean");
    return it->get<bool>();
}

std::string string_or(const json& j, const std::string& path, const char* key,
                      const std::string& fallback) {
    auto it = j.find(key);
    if (it == j.end())
        return fallback;
    if (!it->is_string())
        fail(path + "." + key, "expected a string");
    return it->get<std::string>();
}

std::vector<double> as_number_array(const json& j, const std::string& path) {
    if (!j.is_array())
        fail(path, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(as_number(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

DosModel parse_dos(const json& j, const std::string& path) {
    if (!j.is_object())
        fail(path, "expected an object");
    const std::string model = string_or(j, path, "model", "constant");
    if (model == "constant") {
        check_keys(j, path, {"model", "value"});
        return DosModel::constant(number_or(j, path, "value", 1.0));
    }
    if (model == "power_law") {
        check_keys(j, path, {"model", "prefactor", "exponent"});
        const int k = j.contains("exponent") ? as_int(j.at("exponent"), path + ".exponent") : 2;
        return DosModel::power_law(number_or(j, path, "prefactor", 1.0), k);
    }
    if (model == "tabulated") {
        check_keys(j, path, {"model", "energies", "values"});
        return DosModel::tabulated(as_number_array(require(j, path, "energies"), path + ".energies"),
                                   as_number_array(require(j, path, "values"), path + ".values"));
    }
    fail(path + ".model", "expected constant, power_law or tabulated");
}

CouplingModel parse_coupling(const json& j, const std::string& path) {
    if (!j.is_object())
        fail(path, "expected an object");
    const std::string model = string_or(j, path, "model", "constant");
    if (model == "constant") {
        check_keys(j, path, {"model", "value"});
        return CouplingModel::constant(number_or(j, path, "value", 1.0));
    }
    if (model == "tabulated") {
        check_keys(j, path, {"model", "energies", "values"});
        return CouplingModel::tabulated(
            as_number_array(require(j, path, "energies"), path + ".energies"),
            as_number_array(require(j, path, "values"), path + ".values"));
    }
    fail(path + ".model", "expected constant or tabulated");
}

LeadSpectrum parse_lead(const json& j, const std::string& path, Side side) {
    if (!j.is_object())
        fail(path, "expected an object");
    check_keys(j, path, {"band", "dos", "coupling", "temperature", "allow_ir_divergence"});
    const json& band = require(j, path, "band");
    if (!band.is_array() || band.size() != 2)
        fail(path + ".band", "expected [min, max]");
    const double lo = as_number(band[0], path + ".band[0]");
    double hi;
    if (band[1].is_string() && band[1].get<std::string>() == "inf")
        hi = std::numeric_limits<double>::infinity();
    else
        hi = as_number(band[1], path + ".band[1]");
    DosModel d = j.contains("dos") ? parse_dos(j.at("dos"), path + ".dos") : DosModel::constant(1.0);
    CouplingModel c = j.contains("coupling") ? parse_coupling(j.at("coupling"), path + ".coupling")
                                             : CouplingModel::constant(1.0);
    return LeadSpectrum::make(side, lo, hi, std::move(d), std::move(c),
                              bool_or(j, path, "allow_ir_divergence", false));
}

std::vector<CouplingModel> parse_center_coupling(const json& j, const std::string& path, int modes) {
    if (!j.is_object())
        fail(path, "expected an object");
    const std::string model = string_or(j, path, "model", "constant");
    std::vector<CouplingModel> out;
    if (model == "constant") {
        check_keys(j, path, {"model", "values"});
        std::vector<double> vals = as_number_array(require(j, path, "values"), path + ".values");
        if (static_cast<int>(vals.size()) != modes)
            fail(path + ".values", "need one amplitude per center mode");
        for (double v : vals)
            out.push_back(CouplingModel::constant(v));
        return out;
    }
    if (model == "tabulated") {
        check_keys(j, path, {"model", "energies", "values"});
        std::vector<double> energies =
            as_number_array(require(j, path, "energies"), path + ".energies");
        const json& rows = require(j, path, "values");
        if (!rows.is_array() || static_cast<int>(rows.size()) != modes)
            fail(path + ".values", "need one row of amplitudes per center mode");
        for (std::size_t m = 0; m < rows.size(); ++m)
            out.push_back(CouplingModel::tabulated(
                energies, as_number_array(rows[m], path + ".values[" + std::to_string(m) + "]")));
        return out;
    }
    fail(path + ".model", "expected constant or tabulated");
}

CenterModel parse_center(const json& j, const std::string& path, OracleOptions& oracle) {
    if (!j.is_object())
        fail(path, "expected an object");
    check_keys(j, path, {"spring_matrix", "broadening", "left_coupling", "right_coupling",
                         "dressed", "temperature"});
    const json& rows = require(j, path, "spring_matrix");
    if (!rows.is_array() || rows.empty())
        fail(path + ".spring_matrix", "expected a non-empty array of rows");
    const int n = static_cast<int>(rows.size());
    Eigen::MatrixXd k(n, n);
    for (int r = 0; r < n; ++r) {
        std::vector<double> row = as_number_array(rows[static_cast<std::size_t>(r)],
                                                  path + ".spring_matrix[" + std::to_string(r) + "]");
        if (static_cast<int>(row.size()) != n)
            fail(path + ".spring_matrix", "matrix must be square");
        for (int c = 0; c < n; ++c)
            k(r, c) = row[static_cast<std::size_t>(c)];
    }
    CenterModel center = CenterModel::make(
        std::move(k), parse_center_coupling(require(j, path, "left_coupling"), path + ".left_coupling", n),
        parse_center_coupling(require(j, path, "right_coupling"), path + ".right_coupling", n),
        number_or(j, path, "broadening", 1e-6));
    center.dressed = bool_or(j, path, "dressed", false);
    if (j.contains("temperature"))
        oracle.center_temperature = as_number(j.at("temperature"), path + ".temperature");
    return center;
}

Table2D parse_pair_amplitude(const json& j, const std::string& path) {
    if (!j.is_object())
        fail(path, "expected an object");
    check_keys(j, path, {"energies_left", "energies_right", "values"});
    Table2D t;
    t.energies_left = as_number_array(require(j, path, "energies_left"), path + ".energies_left");
    t.energies_right = as_number_array(require(j, path, "energies_right"), path + ".energies_right");
    const json& rows = require(j, path, "values");
    if (!rows.is_array())
        fail(path + ".values", "expected an array of rows");
    for (std::size_t r = 0; r < rows.size(); ++r)
        t.values.push_back(as_number_array(rows[r], path + ".values[" + std::to_string(r) + "]"));
    t.validate();
    return t;
}

QuadratureOptions parse_tolerances(const json& j, const std::string& path) {
    check_keys(j, path, {"abs_tol", "rel_tol", "max_intervals"});
    QuadratureOptions q;
    q.abs_tol = number_or(j, path, "abs_tol", q.abs_tol);
    q.rel_tol = number_or(j, path, "rel_tol", q.rel_tol);
    if (j.contains("max_intervals"))
        q.max_intervals = as_int(j.at("max_intervals"), path + ".max_intervals");
    return q;
}

void parse_oracle(const json& j, const std::string& path, OracleOptions& o, double& max_dev) {
    check_keys(j, path, {"modes_per_lead", "steps_per_period", "dt", "ramp_cycles",
                         "measure_cycles", "adapt_window", "integrator", "center_temperature",
                         "physicality_every_cycles", "physicality_tol", "max_deviation"});
    if (j.contains("modes_per_lead"))
        o.modes_per_lead = as_int(j.at("modes_per_lead"), path + ".modes_per_lead");
    o.steps_per_period = number_or(j, path, "steps_per_period", o.steps_per_period);
    o.dt_override = number_or(j, path, "dt", o.dt_override);
    o.ramp_cycles = number_or(j, path, "ramp_cycles", o.ramp_cycles);
    o.measure_cycles = number_or(j, path, "measure_cycles", o.measure_cycles);
    o.adapt_window = bool_or(j, path, "adapt_window", o.adapt_window);
    const std::string integ = string_or(j, path, "integrator", "split");
    if (integ == "split")
        o.integrator = Integrator::Split;
    else if (integ == "rk4")
        o.integrator = Integrator::Rk4;
    else
        fail(path + ".integrator", "expected split or rk4");
    o.center_temperature = number_or(j, path, "center_temperature", o.center_temperature);
    if (j.contains("physicality_every_cycles"))
        o.physicality_every_cycles =
            as_int(j.at("physicality_every_cycles"), path + ".physicality_every_cycles");
    o.physicality_tol = number_or(j, path, "physicality_tol", o.physicality_tol);
    max_dev = number_or(j, path, "max_deviation", max_dev);
    o.validate();
}

EnergyAxis parse_axis(const json& j, const std::string& path) {
    std::vector<double> v = as_number_array(j, path);
    if (v.size() != 3)
        fail(path, "expected [lo, hi, points]");
    EnergyAxis a;
    a.lo = v[0];
    a.hi = v[1];
    a.points = static_cast<int>(v[2]);
    if (v[2] != a.points)
        fail(path, "point count must be an integer");
    a.validate(path.c_str());
    return a;
}

} // namespace

void EnergyAxis::validate(const char* what) const {
    if (!(lo > 0.0) || !std::isfinite(lo))
        fail(what, "axis start must be finite and > 0");
    if (!(hi >= lo) || !std::isfinite(hi))
        fail(what, "axis end must be finite and >= start");
    if (points < 1 || points > 100000)
        fail(what, "point count must lie in [1, 100000]");
    if (points == 1 && hi != lo)
        fail(what, "a single-point axis requires lo == hi");
}

std::vector<double> EnergyAxis::values() const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        out.push_back(points == 1 ? lo : lo + (hi - lo) * i / (points - 1));
    return out;
}

RunConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw ConfigError("config: top level must be an object");
    check_keys(j, "$", {"kernel", "pump_frequency", "left", "right", "coupling_scale",
                        "pair_amplitude", "center", "tolerances", "oracle", "transmission_grid",
                        "output"});

    OracleOptions oracle_opts;
    double max_deviation = 0.10;

    const std::string kernel_kind = string_or(j, "$", "kernel", j.contains("center") ? "center" : "trivial");
    if (kernel_kind != "trivial" && kernel_kind != "center")
        fail("$.kernel", "expected trivial or center");

    LeadSpectrum left = parse_lead(require(j, "$", "left"), "$.left", Side::Left);
    LeadSpectrum right = parse_lead(require(j, "$", "right"), "$.right", Side::Right);
    const double t_left = as_number(require(j.at("left"), "$.left", "temperature"), "$.left.temperature");
    const double t_right =
        as_number(require(j.at("right"), "$.right", "temperature"), "$.right.temperature");

    TransmissionKernel kernel = [&] {
        if (kernel_kind == "center") {
            if (j.contains("pair_amplitude"))
                fail("$.pair_amplitude", "not applicable to a center kernel");
            CenterModel center =
                parse_center(require(j, "$", "center"), "$.center", oracle_opts);
            center.dressed_pump_frequency =
                as_number(require(j, "$", "pump_frequency"), "$.pump_frequency");
            return TransmissionKernel::center(std::move(left), std::move(right), std::move(center));
        }
        if (j.contains("center"))
            fail("$.center", "present but kernel is trivial");
        if (j.contains("pair_amplitude"))
            return TransmissionKernel::trivial_pair_table(
                std::move(left), std::move(right),
                parse_pair_amplitude(j.at("pair_amplitude"), "$.pair_amplitude"));
        return TransmissionKernel::trivial(std::move(left), std::move(right));
    }();
    if (j.contains("coupling_scale"))
        kernel = kernel.with_scale(as_number(j.at("coupling_scale"), "$.coupling_scale"));

    QuadratureOptions tol;
    if (j.contains("tolerances"))
        tol = parse_tolerances(j.at("tolerances"), "$.tolerances");

    if (j.contains("oracle"))
        parse_oracle(j.at("oracle"), "$.oracle", oracle_opts, max_deviation);

    RunConfig cfg{
        .problem = TransportProblem::make(
            std::move(kernel), BathState::make(t_left), BathState::make(t_right),
            PumpDrive::make(as_number(require(j, "$", "pump_frequency"), "$.pump_frequency")),
            tol),
        .oracle = oracle_opts,
        .oracle_max_deviation = max_deviation,
    };

    if (j.contains("transmission_grid")) {
        const json& g = j.at("transmission_grid");
        check_keys(g, "$.transmission_grid", {"left", "right"});
        cfg.grid_left = parse_axis(require(g, "$.transmission_grid", "left"),
                                   "$.transmission_grid.left");
        cfg.grid_right = parse_axis(require(g, "$.transmission_grid", "right"),
                                    "$.transmission_grid.right");
        cfg.has_transmission_grid = true;
    }

    if (j.contains("output")) {
        const json& o = j.at("output");
        check_keys(o, "$.output", {"format", "path"});
        cfg.format = string_or(o, "$.output", "format", cfg.format);
        cfg.output_path = string_or(o, "$.output", "path", cfg.output_path);
        if (cfg.format != "json" && cfg.format != "csv")
            fail("$.output.format", "expected json or csv");
    }

    cfg.ir_waiver_used = cfg.problem.left_lead().allow_ir_divergence ||
                         cfg.problem.right_lead().allow_ir_divergence;
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace phl
