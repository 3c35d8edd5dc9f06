// oracle.hpp — brute-force time-domain covariance oracle
//
// Discretizes each lead into equally spaced modes, propagates the symmetric
// quadrature covariance of the full quadratic network through the ramped
// drive, and measures the photon current as the fitted slope of the
// cycle-averaged occupation of a lead. Used to validate the analytic
// transport integrals end to end.

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "phl/current.hpp"

namespace phl {

enum class Integrator {
    Split, // symplectic kick / exact-rotation / kick splitting (default)
    Rk4,   // classical Runge-Kutta on the covariance flow
};

struct OracleOptions {
    int modes_per_lead = 40;
    double steps_per_period = 20.0; // dt = shortest mode period / steps_per_period
    double dt_override = 0.0;       // > 0 replaces the step rule
    double ramp_cycles = 10.0;      // sin^2 switch-on, in pump cycles; 0 = no ramp
    double measure_cycles = 15.0;   // minimum measurement window, in pump cycles
    bool adapt_window = true;       // stretch the window towards the recurrence time
    Integrator integrator = Integrator::Split;
    double center_temperature = 0.0;    // <= 0: thermalise the center with the right bath
    int physicality_every_cycles = 1;   // 0 disables the per-cycle physicality check
    double physicality_tol = 1e-9;

    void validate() const;
};

// Discretized closed quadratic network. Mode order is [left, right, center],
// with the center block rotated to its normal-mode basis so the static spring
// matrix is diagonal. The time-dependent spring matrix is
//   K(t) = diag(frequencies^2) + ramp(t) * (static_coupling
//                                           + cos(pump_frequency t) * pump_coupling).
struct OracleSystem {
    int n_left = 0, n_right = 0, n_center = 0;
    Eigen::VectorXd frequencies;       // all mode frequencies, > 0
    Eigen::MatrixXd pump_coupling;     // symmetric, modulated by the pump
    Eigen::MatrixXd static_coupling;   // symmetric, ramped only
    Eigen::VectorXd initial_occupation; // thermal occupation per mode at t = 0
    double pump_frequency = 0.0;
    double t_ramp = 0.0;
    double dt = 0.0;
    Integrator integrator = Integrator::Split;

    // Map the continuum problem onto modes_per_lead modes per lead placed at
    // band-interval midpoints; pair couplings absorb sqrt(rho * d_eps) of both
    // endpoints so the discrete network reproduces the continuum kernel.
    // Requires finite bands and a separable (non-tabulated-pair) kernel.
    static OracleSystem discretize(const TransportProblem& problem, const OracleOptions& options);

    int total_modes() const { return n_left + n_right + n_center; }
    double ramp(double t) const;
    double cycle_time() const; // pump period (or shortest mode period if undriven)
    // First revival of the discretized leads: 2*pi / (largest level spacing).
    double recurrence_time() const;
    Eigen::MatrixXd spring_matrix(double t) const; // K(t), symmetric
    void validate() const;
};

// Symmetrized covariance of (u_1..u_N, p_1..p_N) at time `time`.
struct CovarianceState {
    double time = 0.0;
    Eigen::MatrixXd cov; // 2N x 2N, symmetric

    int modes() const { return static_cast<int>(cov.rows()) / 2; }
};

// Thermal product state of the uncoupled modes.
CovarianceState initial_covariance(const OracleSystem& system);

// Advance the state to t_final (an integer number of steps, overshooting by at
// most one step). Guards against non-finite or explosively growing covariance
// (parametric instability) and throws IntegrationError.
void propagate(CovarianceState& state, const OracleSystem& system, double t_final);

// Per-mode occupation n_i = <p_i^2>/(2 w_i) + w_i <u_i^2>/2 - 1/2.
Eigen::VectorXd mode_occupations(const CovarianceState& state, const OracleSystem& system);

struct SideOccupation {
    double left = 0.0;
    double right = 0.0;
};
SideOccupation side_occupations(const CovarianceState& state, const OracleSystem& system);

// Smallest eigenvalue of C + (i/2) Omega; >= 0 up to roundoff for any state
// reachable by Gaussian evolution (Heisenberg uncertainty).
double physicality_margin(const CovarianceState& state);

// Least-squares slope through (time, value) samples with its standard error.
struct CurrentFit {
    double value = 0.0;
    double uncertainty = 0.0; // standard error of the slope
    int samples = 0;
};
// Requires at least 5 samples (one per pump cycle).
CurrentFit measure_current(const std::vector<double>& times, const std::vector<double>& values);

// Full analytic-vs-time-domain comparison.
struct OracleComparison {
    CurrentBreakdown analytic;
    double simulated_j_right = 0.0;
    double simulated_j_right_error = 0.0; // slope standard error
    double simulated_j_left = 0.0;
    double simulated_j_left_error = 0.0;
    // |simulated - analytic| / |analytic| for the right current (absolute
    // difference when the analytic value is below 1e-20).
    double relative_deviation = 0.0;
    bool physicality_ok = true;
    double min_physicality_margin = 0.0;
    bool recurrence_exceeded = false;
    // echoed run parameters
    int modes_per_lead = 0;
    double dt = 0.0, t_ramp = 0.0, t_end = 0.0, recurrence_time = 0.0;
    int measured_cycles = 0;
};

// Discretize, ramp up, measure both lead currents over an integer number of
// pump cycles (cycle means, then a slope fit), and compare against the
// analytic breakdown of the same problem.
OracleComparison compare(const TransportProblem& problem, const OracleOptions& options);

} // namespace phl
