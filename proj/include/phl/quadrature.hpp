// quadrature.hpp — adaptive Gauss-Kronrod integration on finite intervals

#pragma once

#include <functional>
#include <vector>

#include "phl/errors.hpp"

namespace phl {

struct QuadratureOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_intervals = 4000; // subdivision budget
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;    // estimated absolute error
    bool converged = true; // error target met within the interval budget
    int evaluations = 0;   // integrand evaluations performed
};

// Integrate f over [a, b] with a 15-point Kronrod / 7-point Gauss pair and
// global adaptive bisection (worst interval first). `breakpoints` lists known
// kinks or resonance positions; points inside (a, b) seed the initial
// partition so the error estimate never straddles them. a == b returns an
// exact zero. a > b is a domain error.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opts = {},
                           const std::vector<double>& breakpoints = {});

} // namespace phl
