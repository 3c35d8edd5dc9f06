// output.cpp — deterministic JSON / CSV serialization of results

#include "phl/output.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace phl {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json term_json(const TermResult& t) {
    return ordered_json{{"value", t.value}, {"error", t.error}, {"converged", t.converged}};
}

ordered_json breakdown_object(const CurrentBreakdown& b) {
    ordered_json j;
    j["j_right"] = b.j_right;
    j["j_left"] = b.j_left;
    j["j_normal"] = b.j_normal;
    j["j_anomalous"] = b.j_anomalous;
    j["j_right_error"] = b.j_right_error;
    j["j_left_error"] = b.j_left_error;
    j["term1"] = term_json(b.term1);
    j["term2"] = term_json(b.term2);
    j["term3"] = term_json(b.term3);
    j["rate_creation"] = term_json(b.rate_creation);
    j["rate_annihilation"] = term_json(b.rate_annihilation);
    j["converged"] = b.converged;
    return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

const char* kBreakdownColumns =
    "j_right,j_left,j_normal,j_anomalous,j_right_error,j_left_error,"
    "term1,term1_error,term2,term2_error,term3,term3_error,"
    "rate_creation,rate_creation_error,rate_annihilation,rate_annihilation_error,converged";

void breakdown_row(std::ostringstream& out, const CurrentBreakdown& b) {
    const double vals[] = {b.j_right,          b.j_left,
                           b.j_normal,         b.j_anomalous,
                           b.j_right_error,    b.j_left_error,
                           b.term1.value,      b.term1.error,
                           b.term2.value,      b.term2.error,
                           b.term3.value,      b.term3.error,
                           b.rate_creation.value,     b.rate_creation.error,
                           b.rate_annihilation.value, b.rate_annihilation.error};
    for (double v : vals)
        out << format_double(v) << ',';
    out << (b.converged ? "true" : "false");
}

} // namespace

std::string format_double(double v) {
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::vector<TransmissionSample> transmission_map(const TransmissionKernel& kernel,
                                                 const std::vector<double>& eps_left,
                                                 const std::vector<double>& eps_right) {
    std::vector<TransmissionSample> out;
    out.reserve(eps_left.size() * eps_right.size());
    for (double e1 : eps_left)
        for (double e2 : eps_right)
            out.push_back({e1, e2, kernel(e1, e2)});
    return out;
}

// ---------------------------------------------------------------------------
// JSON documents

std::string breakdown_json(const CurrentBreakdown& b) { return dump(breakdown_object(b)); }

std::string sweep_json(const char* axis, const std::vector<SweepPoint>& points) {
    ordered_json j;
    j["axis"] = axis;
    j["points"] = ordered_json::array();
    for (const auto& p : points) {
        ordered_json e;
        e["value"] = p.axis_value;
        e["ok"] = p.ok;
        if (p.ok)
            e["result"] = breakdown_object(p.breakdown);
        else
            e["error"] = p.error;
        j["points"].push_back(std::move(e));
    }
    return dump(j);
}

std::string transmission_json(const std::vector<TransmissionSample>& samples) {
    ordered_json j = ordered_json::array();
    for (const auto& s : samples)
        j.push_back(ordered_json{{"eps_left", s.eps_left},
                                 {"eps_right", s.eps_right},
                                 {"transmission", s.transmission}});
    return dump(j);
}

std::string comparison_json(const OracleComparison& c) {
    ordered_json j;
    j["analytic"] = breakdown_object(c.analytic);
    j["simulated_j_right"] = c.simulated_j_right;
    j["simulated_j_right_error"] = c.simulated_j_right_error;
    j["simulated_j_left"] = c.simulated_j_left;
    j["simulated_j_left_error"] = c.simulated_j_left_error;
    j["relative_deviation"] = c.relative_deviation;
    j["physicality_ok"] = c.physicality_ok;
    j["min_physicality_margin"] = c.min_physicality_margin;
    j["recurrence_exceeded"] = c.recurrence_exceeded;
    ordered_json params;
    params["modes_per_lead"] = c.modes_per_lead;
    params["dt"] = c.dt;
    params["t_ramp"] = c.t_ramp;
    params["t_end"] = c.t_end;
    // infinities (e.g. no recurrence for a single mode) serialize as null
    params["recurrence_time"] = c.recurrence_time;
    params["measured_cycles"] = c.measured_cycles;
    j["parameters"] = std::move(params);
    return dump(j);
}

// ---------------------------------------------------------------------------
// CSV documents

std::string breakdown_csv(const CurrentBreakdown& b) {
    std::ostringstream out;
    out << kBreakdownColumns << '\n';
    breakdown_row(out, b);
    out << '\n';
    return out.str();
}

std::string sweep_csv(const char* axis, const std::vector<SweepPoint>& points) {
    std::ostringstream out;
    out << axis << ',' << kBreakdownColumns << ",ok\n";
    for (const auto& p : points) {
        out << format_double(p.axis_value) << ',';
        breakdown_row(out, p.breakdown);
        out << ',' << (p.ok ? "true" : "false") << '\n';
    }
    return out.str();
}

std::string transmission_csv(const std::vector<TransmissionSample>& samples) {
    std::ostringstream out;
    out << "eps_left,eps_right,transmission\n";
    for (const auto& s : samples)
        out << format_double(s.eps_left) << ',' << format_double(s.eps_right) << ','
            << format_double(s.transmission) << '\n';
    return out.str();
}

std::string comparison_csv(const OracleComparison& c) {
    std::ostringstream out;
    out << "analytic_j_right,analytic_j_left,analytic_j_normal,analytic_j_anomalous,"
           "simulated_j_right,simulated_j_right_error,simulated_j_left,simulated_j_left_error,"
           "relative_deviation,physicality_ok,min_physicality_margin,recurrence_exceeded,"
           "modes_per_lead,dt,t_ramp,t_end,recurrence_time,measured_cycles\n";
    out << format_double(c.analytic.j_right) << ',' << format_double(c.analytic.j_left) << ','
        << format_double(c.analytic.j_normal) << ',' << format_double(c.analytic.j_anomalous)
        << ',' << format_double(c.simulated_j_right) << ','
        << format_double(c.simulated_j_right_error) << ',' << format_double(c.simulated_j_left)
        << ',' << format_double(c.simulated_j_left_error) << ','
        << format_double(c.relative_deviation) << ',' << (c.physicality_ok ? "true" : "false")
        << ',' << format_double(c.min_physicality_margin) << ','
        << (c.recurrence_exceeded ? "true" : "false") << ',' << c.modes_per_lead << ','
        << format_double(c.dt) << ',' << format_double(c.t_ramp) << ',' << format_double(c.t_end)
        << ',' << format_double(c.recurrence_time) << ',' << c.measured_cycles << '\n';
    return out.str();
}

} // namespace phl
