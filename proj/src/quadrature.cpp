// quadrature.cpp — adaptive Gauss-Kronrod integration on finite intervals

#include "phl/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace phl {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
// Abscissae are symmetric; only the non-negative half is stored.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Weights of the embedded Gauss rule (nodes kXgk[1], kXgk[3], kXgk[5], kXgk[7]).
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Interval {
    double a = 0.0, b = 0.0;
    double value = 0.0;
    double error = 0.0;
};

struct ByError {
    bool operator()(const Interval& x, const Interval& y) const { return x.error < y.error; }
};

// One Kronrod evaluation of f over [a, b] with the QUADPACK-style error
// estimate based on the scaled Gauss/Kronrod discrepancy.
Interval kronrod(const std::function<double(double)>& f, double a, double b, int& evals) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(center - half * kXgk[i]);
        fv[14 - i] = f(center + half * kXgk[i]);
    }
    fv[7] = f(center);
    evals += 15;

    double resk = kWgk[7] * fv[7];
    double resg = kWg[3] * fv[7];
    for (int i = 0; i < 7; ++i) {
        resk += kWgk[i] * (fv[i] + fv[14 - i]);
        if (i % 2 == 1)
            resg += kWg[i / 2] * (fv[i] + fv[14 - i]);
    }

    const double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fv[7] - reskh);
    for (int i = 0; i < 7; ++i)
        resasc += kWgk[i] * (std::abs(fv[i] - reskh) + std::abs(fv[14 - i] - reskh));
    resasc *= half;

    Interval out;
    out.a = a;
    out.b = b;
    out.value = resk * half;
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    out.error = err;
    return out;
}

} // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opts,
                           const std::vector<double>& breakpoints) {
    if (!(std::isfinite(a) && std::isfinite(b)))
        throw DomainError("integrate: bounds must be finite");
    if (a > b)
        throw DomainError("integrate: lower bound exceeds upper bound");
    if (!(opts.abs_tol > 0.0) || !(opts.rel_tol >= 0.0) || opts.max_intervals < 1)
        throw ConfigError("integrate: invalid tolerance settings");

    QuadratureResult res;
    if (a == b)
        return res; // exact zero, no evaluations

    // Seed the partition with the interior breakpoints.
    std::vector<double> edges;
    edges.push_back(a);
    for (double x : breakpoints)
        if (x > a && x < b)
            edges.push_back(x);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::priority_queue<Interval, std::vector<Interval>, ByError> heap;
    double total_value = 0.0;
    double total_error = 0.0;
    int intervals = 0;

    auto push = [&](const Interval& iv) {
        total_value += iv.value;
        total_error += iv.error;
        heap.push(iv);
        ++intervals;
    };

    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        push(kronrod(f, edges[i], edges[i + 1], res.evaluations));

    auto tolerance = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(total_value)); };

    while (total_error > tolerance() && intervals < opts.max_intervals) {
        Interval worst = heap.top();
        heap.pop();
        total_value -= worst.value;
        total_error -= worst.error;
        --intervals;

        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval no longer representable; keep its estimate as-is.
            push(worst);
            break;
        }
        push(kronrod(f, worst.a, mid, res.evaluations));
        push(kronrod(f, mid, worst.b, res.evaluations));
    }

    res.value = total_value;
    res.error = total_error;
    res.converged = total_error <= tolerance();
    if (!std::isfinite(res.value))
        throw NumericalError("integrate: integrand produced a non-finite result");
    return res;
}

} // namespace phl
