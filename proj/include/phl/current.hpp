// current.hpp — steady cycle-averaged photon currents between two leads

#pragma once

#include <string>
#include <vector>

#include "phl/quadrature.hpp"
#include "phl/transmission.hpp"

namespace phl {

// Full description of one transport computation. The lead spectra live inside
// the kernel; baths, drive and quadrature tolerances are attached here.
struct TransportProblem {
    TransmissionKernel kernel;
    BathState left_bath;
    BathState right_bath;
    PumpDrive pump;
    QuadratureOptions tolerances;

    static TransportProblem make(TransmissionKernel kernel, BathState left_bath,
                                 BathState right_bath, PumpDrive pump,
                                 QuadratureOptions tolerances = {});
    const LeadSpectrum& left_lead() const { return kernel.left(); }
    const LeadSpectrum& right_lead() const { return kernel.right(); }
    void validate() const;
};

// One transport integral: value, absolute error estimate (quadrature error
// plus truncation tail where the support was cut off), convergence flag.
struct TermResult {
    double value = 0.0;
    double error = 0.0;
    bool converged = true;
};

// Cycle-averaged currents into the two leads and their decomposition.
//
//   j_right = term1 + term2 + term3      (current into the right lead)
//   j_left  = the mirrored set of integrals with the lead roles exchanged
//   j_normal = term1 + term2             (Landauer-like, redistribution)
//   j_anomalous = term3                  (pair creation driven by the pump)
//
// term1 moves quanta from left energies eps to right energies eps - omega_p,
// term2 from left energies eps - omega_p to right energies eps, and term3
// creates pairs with energies summing to omega_p. The golden-rule rates
// satisfy rate_creation - rate_annihilation = term3.
struct CurrentBreakdown {
    TermResult term1, term2, term3;
    TermResult rate_creation, rate_annihilation;
    double j_right = 0.0;
    double j_left = 0.0;
    double j_normal = 0.0;
    double j_anomalous = 0.0;
    double j_right_error = 0.0;
    double j_left_error = 0.0;
    bool converged = true;
};

// Raised when a transport integral fails to reach its error target.
class ConvergenceError : public NumericalError {
public:
    explicit ConvergenceError(const std::string& what) : NumericalError(what) {}
};

// Compute the full breakdown. Both entry points evaluate both currents (the
// left current runs its own mirrored quadratures rather than reusing the right
// ones); they are separate names for the same record. Throws ConvergenceError
// if any term misses its tolerance within the subdivision budget.
CurrentBreakdown current_right(const TransportProblem& problem);
CurrentBreakdown current_left(const TransportProblem& problem);

// Golden-rule pair creation / annihilation rates across the pump gap.
struct RatePair {
    TermResult creation;
    TermResult annihilation;
};
RatePair golden_rule_rates(const TransportProblem& problem);

// Parameter sweeps -----------------------------------------------------------

enum class SweepAxis { PumpFrequency, Temperature, CouplingScale };

SweepAxis sweep_axis_from_name(const std::string& name);
const char* sweep_axis_name(SweepAxis axis);

struct SweepPoint {
    double axis_value = 0.0;
    CurrentBreakdown breakdown;
    bool ok = false;
    std::string error; // set when ok == false
};

// Evaluate the breakdown at `steps` equally spaced axis values in [from, to]
// (steps == 1 evaluates `from` only). The temperature axis sets both baths.
// Points are computed by a worker pool whose size is capped by the
// PHOTON_LANDAUER_THREADS environment variable; results are returned in axis
// order regardless of scheduling. Failures are recorded per point.
std::vector<SweepPoint> sweep(const TransportProblem& problem, SweepAxis axis, double from,
                              double to, int steps);

} // namespace phl
