// bindings.cpp — python bindings for the photon transport engine

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "phl/config.hpp"
#include "phl/output.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Cycle-averaged photon transport between parametrically coupled leads";

    py::register_exception<phl::DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<phl::ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<phl::NumericalError>(m, "NumericalError", PyExc_RuntimeError);

    py::enum_<phl::Side>(m, "Side")
        .value("Left", phl::Side::Left)
        .value("Right", phl::Side::Right);

    py::enum_<phl::Integrator>(m, "Integrator")
        .value("Split", phl::Integrator::Split)
        .value("Rk4", phl::Integrator::Rk4);

    py::enum_<phl::SweepAxis>(m, "SweepAxis")
        .value("PumpFrequency", phl::SweepAxis::PumpFrequency)
        .value("Temperature", phl::SweepAxis::Temperature)
        .value("CouplingScale", phl::SweepAxis::CouplingScale);

    py::class_<phl::DosModel>(m, "DosModel")
        .def_static("constant", &phl::DosModel::constant, py::arg("rho0"))
        .def_static("power_law", &phl::DosModel::power_law, py::arg("rho0"), py::arg("exponent"))
        .def_static("tabulated", &phl::DosModel::tabulated, py::arg("energies"), py::arg("values"))
        .def("__call__", &phl::DosModel::operator(), py::arg("energy"));

    py::class_<phl::CouplingModel>(m, "CouplingModel")
        .def_static("constant", &phl::CouplingModel::constant, py::arg("value"))
        .def_static("tabulated", &phl::CouplingModel::tabulated, py::arg("energies"),
                    py::arg("values"))
        .def("__call__", &phl::CouplingModel::operator(), py::arg("energy"));

    py::class_<phl::LeadSpectrum>(m, "LeadSpectrum")
        .def_static("make", &phl::LeadSpectrum::make, py::arg("side"), py::arg("band_min"),
                    py::arg("band_max"), py::arg("dos"), py::arg("coupling"),
                    py::arg("allow_ir_divergence") = false)
        .def_readonly("side", &phl::LeadSpectrum::side)
        .def_readonly("band_min", &phl::LeadSpectrum::band_min)
        .def_readonly("band_max", &phl::LeadSpectrum::band_max)
        .def("in_band", &phl::LeadSpectrum::in_band, py::arg("energy"));

    py::class_<phl::BathState>(m, "BathState")
        .def_static("make", &phl::BathState::make, py::arg("temperature"))
        .def_readonly("temperature", &phl::BathState::temperature)
        .def_readonly("chemical_potential", &phl::BathState::chemical_potential);

    py::class_<phl::PumpDrive>(m, "PumpDrive")
        .def_static("make", &phl::PumpDrive::make, py::arg("frequency"))
        .def_readonly("frequency", &phl::PumpDrive::frequency);

    py::class_<phl::CenterModel>(m, "CenterModel")
        .def_static("make", &phl::CenterModel::make, py::arg("spring_matrix"),
                    py::arg("left_coupling"), py::arg("right_coupling"),
                    py::arg("broadening") = 1e-6)
        .def_readwrite("dressed", &phl::CenterModel::dressed)
        .def_readwrite("dressed_pump_frequency", &phl::CenterModel::dressed_pump_frequency)
        .def_property_readonly("mode_count", &phl::CenterModel::mode_count)
        .def("resonance_energies", &phl::CenterModel::resonance_energies);

    py::class_<phl::Table2D>(m, "Table2D")
        .def(py::init([](std::vector<double> el, std::vector<double> er,
                         std::vector<std::vector<double>> v) {
                 phl::Table2D t{std::move(el), std::move(er), std::move(v)};
                 t.validate();
                 return t;
             }),
             py::arg("energies_left"), py::arg("energies_right"), py::arg("values"))
        .def("__call__", &phl::Table2D::operator(), py::arg("eps_left"), py::arg("eps_right"));

    py::class_<phl::TransmissionKernel>(m, "TransmissionKernel")
        .def_static("trivial", &phl::TransmissionKernel::trivial, py::arg("left"),
                    py::arg("right"))
        .def_static("trivial_pair_table", &phl::TransmissionKernel::trivial_pair_table,
                    py::arg("left"), py::arg("right"), py::arg("pair_amplitude"))
        .def_static("center", &phl::TransmissionKernel::center, py::arg("left"), py::arg("right"),
                    py::arg("model"))
        .def("__call__", &phl::TransmissionKernel::operator(), py::arg("eps_left"),
             py::arg("eps_right"))
        .def("with_scale", &phl::TransmissionKernel::with_scale, py::arg("scale"))
        .def_property_readonly("coupling_scale", &phl::TransmissionKernel::coupling_scale)
        .def_property_readonly("has_center", &phl::TransmissionKernel::has_center)
        .def("resonance_energies", &phl::TransmissionKernel::resonance_energies);

    py::class_<phl::QuadratureOptions>(m, "QuadratureOptions")
        .def(py::init<>())
        .def_readwrite("abs_tol", &phl::QuadratureOptions::abs_tol)
        .def_readwrite("rel_tol", &phl::QuadratureOptions::rel_tol)
        .def_readwrite("max_intervals", &phl::QuadratureOptions::max_intervals);

    py::class_<phl::TransportProblem>(m, "TransportProblem")
        .def_static("make", &phl::TransportProblem::make, py::arg("kernel"), py::arg("left_bath"),
                    py::arg("right_bath"), py::arg("pump"),
                    py::arg("tolerances") = phl::QuadratureOptions{})
        .def_readonly("kernel", &phl::TransportProblem::kernel)
        .def_readonly("left_bath", &phl::TransportProblem::left_bath)
        .def_readonly("right_bath", &phl::TransportProblem::right_bath)
        .def_readonly("pump", &phl::TransportProblem::pump);

    py::class_<phl::TermResult>(m, "TermResult")
        .def_readonly("value", &phl::TermResult::value)
        .def_readonly("error", &phl::TermResult::error)
        .def_readonly("converged", &phl::TermResult::converged);

    py::class_<phl::CurrentBreakdown>(m, "CurrentBreakdown")
        .def_readonly("term1", &phl::CurrentBreakdown::term1)
        .def_readonly("term2", &phl::CurrentBreakdown::term2)
        .def_readonly("term3", &phl::CurrentBreakdown::term3)
        .def_readonly("rate_creation", &phl::CurrentBreakdown::rate_creation)
        .def_readonly("rate_annihilation", &phl::CurrentBreakdown::rate_annihilation)
        .def_readonly("j_right", &phl::CurrentBreakdown::j_right)
        .def_readonly("j_left", &phl::CurrentBreakdown::j_left)
        .def_readonly("j_normal", &phl::CurrentBreakdown::j_normal)
        .def_readonly("j_anomalous", &phl::CurrentBreakdown::j_anomalous)
        .def_readonly("j_right_error", &phl::CurrentBreakdown::j_right_error)
        .def_readonly("j_left_error", &phl::CurrentBreakdown::j_left_error)
        .def_readonly("converged", &phl::CurrentBreakdown::converged)
        .def("to_json", [](const phl::CurrentBreakdown& b) { return phl::breakdown_json(b); });

    py::class_<phl::RatePair>(m, "RatePair")
        .def_readonly("creation", &phl::RatePair::creation)
        .def_readonly("annihilation", &phl::RatePair::annihilation);

    py::class_<phl::SweepPoint>(m, "SweepPoint")
        .def_readonly("axis_value", &phl::SweepPoint::axis_value)
        .def_readonly("breakdown", &phl::SweepPoint::breakdown)
        .def_readonly("ok", &phl::SweepPoint::ok)
        .def_readonly("error", &phl::SweepPoint::error);

    py::class_<phl::OracleOptions>(m, "OracleOptions")
        .def(py::init<>())
        .def_readwrite("modes_per_lead", &phl::OracleOptions::modes_per_lead)
        .def_readwrite("steps_per_period", &phl::OracleOptions::steps_per_period)
        .def_readwrite("dt_override", &phl::OracleOptions::dt_override)
        .def_readwrite("ramp_cycles", &phl::OracleOptions::ramp_cycles)
        .def_readwrite("measure_cycles", &phl::OracleOptions::measure_cycles)
        .def_readwrite("adapt_window", &phl::OracleOptions::adapt_window)
        .def_readwrite("integrator", &phl::OracleOptions::integrator)
        .def_readwrite("center_temperature", &phl::OracleOptions::center_temperature)
        .def_readwrite("physicality_every_cycles", &phl::OracleOptions::physicality_every_cycles)
        .def_readwrite("physicality_tol", &phl::OracleOptions::physicality_tol);

    py::class_<phl::OracleSystem>(m, "OracleSystem")
        .def_static("discretize", &phl::OracleSystem::discretize, py::arg("problem"),
                    py::arg("options"))
        .def_readonly("n_left", &phl::OracleSystem::n_left)
        .def_readonly("n_right", &phl::OracleSystem::n_right)
        .def_readonly("n_center", &phl::OracleSystem::n_center)
        .def_readonly("frequencies", &phl::OracleSystem::frequencies)
        .def_readonly("pump_coupling", &phl::OracleSystem::pump_coupling)
        .def_readonly("static_coupling", &phl::OracleSystem::static_coupling)
        .def_readonly("dt", &phl::OracleSystem::dt)
        .def_readonly("t_ramp", &phl::OracleSystem::t_ramp)
        .def("recurrence_time", &phl::OracleSystem::recurrence_time)
        .def("spring_matrix", &phl::OracleSystem::spring_matrix, py::arg("t"));

    py::class_<phl::CovarianceState>(m, "CovarianceState")
        .def_readonly("time", &phl::CovarianceState::time)
        .def_readonly("cov", &phl::CovarianceState::cov);

    py::class_<phl::SideOccupation>(m, "SideOccupation")
        .def_readonly("left", &phl::SideOccupation::left)
        .def_readonly("right", &phl::SideOccupation::right);

    py::class_<phl::CurrentFit>(m, "CurrentFit")
        .def_readonly("value", &phl::CurrentFit::value)
        .def_readonly("uncertainty", &phl::CurrentFit::uncertainty)
        .def_readonly("samples", &phl::CurrentFit::samples);

    py::class_<phl::OracleComparison>(m, "OracleComparison")
        .def_readonly("analytic", &phl::OracleComparison::analytic)
        .def_readonly("simulated_j_right", &phl::OracleComparison::simulated_j_right)
        .def_readonly("simulated_j_right_error", &phl::OracleComparison::simulated_j_right_error)
        .def_readonly("simulated_j_left", &phl::OracleComparison::simulated_j_left)
        .def_readonly("simulated_j_left_error", &phl::OracleComparison::simulated_j_left_error)
        .def_readonly("relative_deviation", &phl::OracleComparison::relative_deviation)
        .def_readonly("physicality_ok", &phl::OracleComparison::physicality_ok)
        .def_readonly("min_physicality_margin", &phl::OracleComparison::min_physicality_margin)
        .def_readonly("recurrence_exceeded", &phl::OracleComparison::recurrence_exceeded)
        .def_readonly("modes_per_lead", &phl::OracleComparison::modes_per_lead)
        .def_readonly("dt", &phl::OracleComparison::dt)
        .def_readonly("t_ramp", &phl::OracleComparison::t_ramp)
        .def_readonly("t_end", &phl::OracleComparison::t_end)
        .def_readonly("recurrence_time", &phl::OracleComparison::recurrence_time)
        .def_readonly("measured_cycles", &phl::OracleComparison::measured_cycles)
        .def("to_json", [](const phl::OracleComparison& c) { return phl::comparison_json(c); });

    py::class_<phl::RunConfig>(m, "RunConfig")
        .def_readonly("problem", &phl::RunConfig::problem)
        .def_readonly("oracle", &phl::RunConfig::oracle)
        .def_readonly("oracle_max_deviation", &phl::RunConfig::oracle_max_deviation)
        .def_readonly("format", &phl::RunConfig::format);

    m.def("bose_occupation", &phl::bose_occupation, py::arg("energy"), py::arg("bath"));
    m.def("dos", &phl::dos, py::arg("energy"), py::arg("lead"));
    m.def("coupling_amplitude", &phl::coupling_amplitude, py::arg("energy"), py::arg("lead"));
    m.def("transmission_trivial", &phl::transmission_trivial, py::arg("eps1"), py::arg("eps2"),
          py::arg("left"), py::arg("right"));
    m.def("transmission_center", &phl::transmission_center, py::arg("eps_alpha"),
          py::arg("eps_beta"), py::arg("kernel"));
    m.def("center_greens_retarded", &phl::center_greens_retarded, py::arg("omega"),
          py::arg("center"));
    m.def("lambda_matrix", &phl::lambda_matrix, py::arg("energy"), py::arg("side"),
          py::arg("lead"), py::arg("center"));
    m.def("current_right", &phl::current_right, py::arg("problem"),
          py::call_guard<py::gil_scoped_release>());
    m.def("current_left", &phl::current_left, py::arg("problem"),
          py::call_guard<py::gil_scoped_release>());
    m.def("golden_rule_rates", &phl::golden_rule_rates, py::arg("problem"),
          py::call_guard<py::gil_scoped_release>());
    m.def("sweep", &phl::sweep, py::arg("problem"), py::arg("axis"), py::arg("from_value"),
          py::arg("to_value"), py::arg("steps"), py::call_guard<py::gil_scoped_release>());
    m.def("initial_covariance", &phl::initial_covariance, py::arg("system"));
    m.def("propagate", &phl::propagate, py::arg("state"), py::arg("system"), py::arg("t_final"),
          py::call_guard<py::gil_scoped_release>());
    m.def("mode_occupations", &phl::mode_occupations, py::arg("state"), py::arg("system"));
    m.def("side_occupations", &phl::side_occupations, py::arg("state"), py::arg("system"));
    m.def("physicality_margin", &phl::physicality_margin, py::arg("state"));
    m.def("measure_current", &phl::measure_current, py::arg("times"), py::arg("values"));
    m.def("compare", &phl::compare, py::arg("problem"), py::arg("options"),
          py::call_guard<py::gil_scoped_release>());
    m.def("load_config", &phl::load_config, py::arg("path"));
    m.def("parse_config", &phl::parse_config, py::arg("json_text"));
}
