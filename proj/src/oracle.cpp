// oracle.cpp — brute-force time-domain covariance oracle

#include "phl/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace phl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Workspace for the symplectic split stepper: half-kick with K(t) - D, exact
// per-mode rotation under D, half-kick with K(t + dt) - D. Every substep is a
// linear symplectic map applied as C <- M C M^T, so Gaussian physicality is
// preserved exactly; with zero coupling the rotation alone is exact.
struct SplitStepper {
    int n;
    Eigen::VectorXd cos_wdt, sin_over_w, sin_times_w;
    Eigen::MatrixXd vk, tmp1, tmp2;

    SplitStepper(const OracleSystem& sys, double dt) : n(sys.total_modes()) {
        cos_wdt.resize(n);
        sin_over_w.resize(n);
        sin_times_w.resize(n);
        for (int i = 0; i < n; ++i) {
            const double w = sys.frequencies[i];
            cos_wdt[i] = std::cos(w * dt);
            sin_over_w[i] = std::sin(w * dt) / w;
            sin_times_w[i] = std::sin(w * dt) * w;
        }
        vk.resize(n, n);
        tmp1.resize(n, n);
        tmp2.resize(n, n);
    }

    // Coupling part of the spring matrix at time t (the kick generator).
    void coupling_at(const OracleSystem& sys, double t) {
        const double r = sys.ramp(t);
        vk = r * sys.static_coupling;
        if (sys.pump_frequency > 0.0)
            vk += (r * std::cos(sys.pump_frequency * t)) * sys.pump_coupling;
        else
            vk += r * sys.pump_coupling;
    }

    void half_kick(Eigen::MatrixXd& c, double h) {
        auto cuu = c.topLeftCorner(n, n);
        auto cup = c.topRightCorner(n, n);
        auto cpu = c.bottomLeftCorner(n, n);
        auto cpp = c.bottomRightCorner(n, n);
        tmp1.noalias() = vk * cuu; // V Cuu
        tmp2.noalias() = vk * cup; // V Cup
        cpp.noalias() -= h * tmp2;
        cpp.noalias() -= h * tmp2.transpose();
        cpp.noalias() += (h * h) * (tmp1 * vk);
        cup.noalias() -= h * tmp1.transpose();
        cpu = cup.transpose();
    }

    void rotate(Eigen::MatrixXd& c) {
        const auto& dc = cos_wdt;
        const auto& dso = sin_over_w;
        const auto& dsw = sin_times_w;
        const Eigen::MatrixXd a = c.topLeftCorner(n, n);
        const Eigen::MatrixXd b = c.topRightCorner(n, n);
        const Eigen::MatrixXd d = c.bottomRightCorner(n, n);
        auto outer = [&](const Eigen::VectorXd& l, const Eigen::MatrixXd& m,
                         const Eigen::VectorXd& r) -> Eigen::MatrixXd {
            return l.asDiagonal() * m * r.asDiagonal();
        };
        c.topLeftCorner(n, n) = outer(dc, a, dc) + outer(dc, b, dso) +
                                outer(dso, b.transpose(), dc) + outer(dso, d, dso);
        c.topRightCorner(n, n) = -outer(dc, a, dsw) + outer(dc, b, dc) -
                                 outer(dso, b.transpose(), dsw) + outer(dso, d, dc);
        c.bottomRightCorner(n, n) = outer(dsw, a, dsw) - outer(dsw, b, dc) -
                                    outer(dc, b.transpose(), dsw) + outer(dc, d, dc);
        c.bottomLeftCorner(n, n) = c.topRightCorner(n, n).transpose();
    }

    void step(Eigen::MatrixXd& c, const OracleSystem& sys, double t, double dt) {
        coupling_at(sys, t);
        half_kick(c, 0.5 * dt);
        rotate(c);
        coupling_at(sys, t + dt);
        half_kick(c, 0.5 * dt);
    }
};

// Covariance flow dC/dt = A(t) C + C A(t)^T with A = [[0, I], [-K(t), 0]],
// written in blocks to avoid forming A.
void covariance_derivative(const Eigen::MatrixXd& c, const Eigen::MatrixXd& k, int n,
                           Eigen::MatrixXd& out) {
    const auto cuu = c.topLeftCorner(n, n);
    const auto cup = c.topRightCorner(n, n);
    const auto cpu = c.bottomLeftCorner(n, n);
    const auto cpp = c.bottomRightCorner(n, n);
    out.topLeftCorner(n, n) = cpu + cup;
    out.topRightCorner(n, n) = cpp - cuu * k;
    out.bottomLeftCorner(n, n) = cpp - k * cuu;
    out.bottomRightCorner(n, n) = -(k * cup) - cpu * k;
}

struct Rk4Stepper {
    int n;
    Eigen::MatrixXd k1, k2, k3, k4, work;

    explicit Rk4Stepper(const OracleSystem& sys) : n(sys.total_modes()) {
        const int m = 2 * n;
        k1.resize(m, m);
        k2.resize(m, m);
        k3.resize(m, m);
        k4.resize(m, m);
        work.resize(m, m);
    }

    void step(Eigen::MatrixXd& c, const OracleSystem& sys, double t, double dt) {
        const Eigen::MatrixXd ka = sys.spring_matrix(t);
        const Eigen::MatrixXd kb = sys.spring_matrix(t + 0.5 * dt);
        const Eigen::MatrixXd kc = sys.spring_matrix(t + dt);
        covariance_derivative(c, ka, n, k1);
        work = c + (0.5 * dt) * k1;
        covariance_derivative(work, kb, n, k2);
        work = c + (0.5 * dt) * k2;
        covariance_derivative(work, kb, n, k3);
        work = c + dt * k3;
        covariance_derivative(work, kc, n, k4);
        c += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        c = 0.5 * (c + c.transpose()).eval();
    }
};

void check_stability(const Eigen::MatrixXd& k, const char* what) {
    Eigen::LLT<Eigen::MatrixXd> llt(k);
    if (llt.info() != Eigen::Success)
        throw ConfigError(std::string("oracle: spring matrix not positive definite at ") + what +
                          " drive (coupling too strong for the mode frequencies)");
}

} // namespace

// ---------------------------------------------------------------------------
// Options / system construction

void OracleOptions::validate() const {
    if (modes_per_lead < 1 || modes_per_lead > 2000)
        throw ConfigError("oracle: modes_per_lead must lie in [1, 2000]");
    if (!(steps_per_period >= 4.0))
        throw ConfigError("oracle: steps_per_period must be >= 4");
    if (dt_override < 0.0 || !std::isfinite(dt_override))
        throw ConfigError("oracle: dt override must be >= 0");
    if (ramp_cycles != 0.0 && ramp_cycles < 10.0)
        throw ConfigError("oracle: ramp must last at least 10 pump cycles (or 0 to disable)");
    if (measure_cycles < 5.0)
        throw ConfigError("oracle: measurement window must cover at least 5 pump cycles");
    if (physicality_every_cycles < 0)
        throw ConfigError("oracle: physicality_every_cycles must be >= 0");
    if (!(physicality_tol > 0.0))
        throw ConfigError("oracle: physicality tolerance must be > 0");
}

OracleSystem OracleSystem::discretize(const TransportProblem& problem,
                                      const OracleOptions& options) {
    problem.validate();
    options.validate();
    const TransmissionKernel& kernel = problem.kernel;
    if (kernel.has_pair_table())
        throw ConfigError("oracle: non-separable pair-amplitude kernels cannot be discretized");
    const LeadSpectrum& ll = kernel.left();
    const LeadSpectrum& rl = kernel.right();
    if (!std::isfinite(ll.band_max) || !std::isfinite(rl.band_max))
        throw ConfigError("oracle: discretization requires finite lead bands");

    const int n = options.modes_per_lead;
    const double s = kernel.coupling_scale();

    OracleSystem sys;
    sys.n_left = n;
    sys.n_right = n;
    sys.n_center = kernel.has_center() ? kernel.center_model().mode_count() : 0;
    sys.pump_frequency = problem.pump.frequency;
    sys.integrator = options.integrator;

    const int total = 2 * n + sys.n_center;
    sys.frequencies.resize(total);
    sys.initial_occupation.resize(total);
    sys.pump_coupling = Eigen::MatrixXd::Zero(total, total);
    sys.static_coupling = Eigen::MatrixXd::Zero(total, total);

    const double d_left = (ll.band_max - ll.band_min) / n;
    const double d_right = (rl.band_max - rl.band_min) / n;
    auto midpoint = [](const LeadSpectrum& lead, double d, int i) {
        return lead.band_min + (i + 0.5) * d;
    };
    for (int i = 0; i < n; ++i) {
        const double e = midpoint(ll, d_left, i);
        sys.frequencies[i] = e;
        sys.initial_occupation[i] = bose_occupation(e, problem.left_bath);
    }
    for (int j = 0; j < n; ++j) {
        const double e = midpoint(rl, d_right, j);
        sys.frequencies[n + j] = e;
        sys.initial_occupation[n + j] = bose_occupation(e, problem.right_bath);
    }

    if (!kernel.has_center()) {
        // Direct pump-modulated lead-lead pairs. The pair coupling absorbs
        // sqrt(rho * d_eps) of both modes so the discrete golden rule
        // reproduces the continuum transmission.
        for (int i = 0; i < n; ++i) {
            const double ei = midpoint(ll, d_left, i);
            const double wl = std::sqrt(ll.dos(ei) * d_left) * ll.coupling(ei);
            for (int j = 0; j < n; ++j) {
                const double ej = midpoint(rl, d_right, j);
                const double lam = s * wl * std::sqrt(rl.dos(ej) * d_right) * rl.coupling(ej);
                sys.pump_coupling(i, n + j) = lam;
                sys.pump_coupling(n + j, i) = lam;
            }
        }
    } else {
        // Center-mediated: pump-modulated left-center block, static (ramped)
        // right-center block. The center block is rotated to its normal-mode
        // basis so the uncoupled spring matrix stays diagonal.
        const CenterModel& c = kernel.center_model();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c.spring_matrix);
        if (es.info() != Eigen::Success)
            throw NumericalError("oracle: center spring matrix eigendecomposition failed");
        const Eigen::MatrixXd q = es.eigenvectors();
        const double t_center = options.center_temperature > 0.0
                                    ? options.center_temperature
                                    : problem.right_bath.temperature;
        const BathState center_bath = BathState::make(t_center);
        for (int g = 0; g < sys.n_center; ++g) {
            const double w = std::sqrt(es.eigenvalues()[g]);
            sys.frequencies[2 * n + g] = w;
            sys.initial_occupation[2 * n + g] = bose_occupation(w, center_bath);
        }
        const int nc = sys.n_center;
        Eigen::VectorXd lam(nc);
        for (int i = 0; i < n; ++i) {
            const double ei = midpoint(ll, d_left, i);
            for (int m = 0; m < nc; ++m)
                lam[m] = c.left_coupling[static_cast<std::size_t>(m)](ei);
            const Eigen::VectorXd row = (s * std::sqrt(ll.dos(ei) * d_left)) * (q.transpose() * lam);
            for (int g = 0; g < nc; ++g) {
                sys.pump_coupling(i, 2 * n + g) = row[g];
                sys.pump_coupling(2 * n + g, i) = row[g];
            }
        }
        for (int j = 0; j < n; ++j) {
            const double ej = midpoint(rl, d_right, j);
            for (int m = 0; m < nc; ++m)
                lam[m] = c.right_coupling[static_cast<std::size_t>(m)](ej);
            const Eigen::VectorXd row = (s * std::sqrt(rl.dos(ej) * d_right)) * (q.transpose() * lam);
            for (int g = 0; g < nc; ++g) {
                sys.static_coupling(n + j, 2 * n + g) = row[g];
                sys.static_coupling(2 * n + g, n + j) = row[g];
            }
        }
    }

    const double w_max = std::max(sys.frequencies.maxCoeff(), sys.pump_frequency);
    sys.dt = options.dt_override > 0.0 ? options.dt_override
                                       : kTwoPi / (options.steps_per_period * w_max);
    sys.t_ramp = options.ramp_cycles * (sys.pump_frequency > 0.0 ? kTwoPi / sys.pump_frequency
                                                                 : kTwoPi / w_max);
    sys.validate();
    return sys;
}

void OracleSystem::validate() const {
    if (n_left < 1 || n_right < 1 || n_center < 0)
        throw ConfigError("oracle: need at least one mode per lead");
    if (frequencies.size() != total_modes() || frequencies.minCoeff() <= 0.0)
        throw ConfigError("oracle: all mode frequencies must be > 0");
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw ConfigError("oracle: time step must be finite and > 0");
    if (t_ramp < 0.0 || pump_frequency < 0.0)
        throw ConfigError("oracle: ramp time and pump frequency must be >= 0");
    const int total = total_modes();
    if (pump_coupling.rows() != total || pump_coupling.cols() != total ||
        static_coupling.rows() != total || static_coupling.cols() != total)
        throw ConfigError("oracle: coupling matrix dimensions do not match the mode count");
    if ((pump_coupling - pump_coupling.transpose()).cwiseAbs().maxCoeff() > 0.0 ||
        (static_coupling - static_coupling.transpose()).cwiseAbs().maxCoeff() > 0.0)
        throw ConfigError("oracle: coupling matrices must be symmetric");
    // Sufficient stability condition: K(t) is a convex combination of the
    // static matrix and the two full-drive extremes, so positive definiteness
    // of the extremes guarantees it for all times.
    const Eigen::MatrixXd d = frequencies.array().square().matrix().asDiagonal();
    check_stability(d + static_coupling + pump_coupling, "maximum");
    check_stability(d + static_coupling - pump_coupling, "minimum");
}

double OracleSystem::ramp(double t) const {
    if (t_ramp <= 0.0 || t >= t_ramp)
        return 1.0;
    if (t <= 0.0)
        return 0.0;
    const double s = std::sin(0.5 * std::numbers::pi * t / t_ramp);
    return s * s;
}

double OracleSystem::cycle_time() const {
    return pump_frequency > 0.0 ? kTwoPi / pump_frequency : kTwoPi / frequencies.maxCoeff();
}

double OracleSystem::recurrence_time() const {
    auto spacing = [&](int offset, int count) {
        double d = 0.0;
        for (int i = 1; i < count; ++i)
            d = std::max(d, frequencies[offset + i] - frequencies[offset + i - 1]);
        return d;
    };
    const double d = std::max(spacing(0, n_left), spacing(n_left, n_right));
    return d > 0.0 ? kTwoPi / d : std::numeric_limits<double>::infinity();
}

Eigen::MatrixXd OracleSystem::spring_matrix(double t) const {
    const double r = ramp(t);
    const double drive = pump_frequency > 0.0 ? std::cos(pump_frequency * t) : 1.0;
    Eigen::MatrixXd k = r * static_coupling + (r * drive) * pump_coupling;
    k.diagonal() += frequencies.array().square().matrix();
    return k;
}

// ---------------------------------------------------------------------------
// State construction and measurements

CovarianceState initial_covariance(const OracleSystem& system) {
    system.validate();
    const int n = system.total_modes();
    CovarianceState st;
    st.time = 0.0;
    st.cov = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        const double w = system.frequencies[i];
        const double filling = system.initial_occupation[i] + 0.5;
        st.cov(i, i) = filling / w;
        st.cov(n + i, n + i) = filling * w;
    }
    return st;
}

Eigen::VectorXd mode_occupations(const CovarianceState& state, const OracleSystem& system) {
    const int n = system.total_modes();
    if (state.modes() != n)
        throw ConfigError("oracle: state and system mode counts do not match");
    Eigen::VectorXd out(n);
    for (int i = 0; i < n; ++i) {
        const double w = system.frequencies[i];
        out[i] = state.cov(n + i, n + i) / (2.0 * w) + 0.5 * w * state.cov(i, i) - 0.5;
    }
    return out;
}

SideOccupation side_occupations(const CovarianceState& state, const OracleSystem& system) {
    const Eigen::VectorXd n = mode_occupations(state, system);
    SideOccupation s;
    s.left = n.head(system.n_left).sum();
    s.right = n.segment(system.n_left, system.n_right).sum();
    return s;
}

double physicality_margin(const CovarianceState& state) {
    const int n = state.modes();
    Eigen::MatrixXcd h = state.cov.cast<std::complex<double>>();
    for (int i = 0; i < n; ++i) {
        h(i, n + i) += std::complex<double>(0.0, 0.5);
        h(n + i, i) -= std::complex<double>(0.0, 0.5);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

// ---------------------------------------------------------------------------
// Propagation

void propagate(CovarianceState& state, const OracleSystem& system, double t_final) {
    const int n = system.total_modes();
    if (state.modes() != n)
        throw ConfigError("oracle: state and system mode counts do not match");
    if (t_final < state.time) {
        // The stepper lands on the step grid and may pass a requested target by
        // less than one step; re-targeting inside that covered window is a no-op.
        if (t_final > state.time - system.dt)
            return;
        throw ConfigError("oracle: cannot propagate backwards in time");
    }
    const double span = t_final - state.time;
    const long steps = static_cast<long>(std::ceil(span / system.dt - 1e-9));
    if (steps <= 0)
        return;

    const double t0 = state.time;
    const double guard_scale = state.cov.trace() + 1.0;

    auto guard = [&](long step) {
        if (!state.cov.allFinite())
            throw IntegrationError("oracle: covariance became non-finite at t = " +
                                   std::to_string(t0 + step * system.dt));
        if (state.cov.trace() > 1e9 * guard_scale)
            throw IntegrationError(
                "oracle: covariance grows without bound (parametric instability) at t = " +
                std::to_string(t0 + step * system.dt));
    };

    if (system.integrator == Integrator::Split) {
        SplitStepper stepper(system, system.dt);
        for (long i = 0; i < steps; ++i) {
            stepper.step(state.cov, system, t0 + i * system.dt, system.dt);
            if ((i & 255) == 255)
                guard(i + 1);
        }
    } else {
        Rk4Stepper stepper(system);
        for (long i = 0; i < steps; ++i) {
            stepper.step(state.cov, system, t0 + i * system.dt, system.dt);
            if ((i & 255) == 255)
                guard(i + 1);
        }
    }
    guard(steps);
    state.time = t0 + steps * system.dt;
}

// ---------------------------------------------------------------------------
// Current measurement and comparison

CurrentFit measure_current(const std::vector<double>& times, const std::vector<double>& values) {
    if (times.size() != values.size())
        throw ConfigError("measure_current: time and value arrays differ in length");
    const int m = static_cast<int>(times.size());
    if (m < 5)
        throw ConfigError("measure_current: need at least 5 cycle samples for a slope fit");

    double tbar = 0.0, ybar = 0.0;
    for (int i = 0; i < m; ++i) {
        tbar += times[static_cast<std::size_t>(i)];
        ybar += values[static_cast<std::size_t>(i)];
    }
    tbar /= m;
    ybar /= m;
    double sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < m; ++i) {
        const double dx = times[static_cast<std::size_t>(i)] - tbar;
        sxx += dx * dx;
        sxy += dx * (values[static_cast<std::size_t>(i)] - ybar);
    }
    if (!(sxx > 0.0))
        throw ConfigError("measure_current: sample times must not be identical");

    CurrentFit fit;
    fit.samples = m;
    fit.value = sxy / sxx;
    double sse = 0.0;
    for (int i = 0; i < m; ++i) {
        const double r = values[static_cast<std::size_t>(i)] - ybar -
                         fit.value * (times[static_cast<std::size_t>(i)] - tbar);
        sse += r * r;
    }
    fit.uncertainty = std::sqrt(std::max(0.0, sse / (m - 2)) / sxx);
    return fit;
}

OracleComparison compare(const TransportProblem& problem, const OracleOptions& options) {
    OracleComparison out;
    out.analytic = current_right(problem);

    OracleSystem sys = OracleSystem::discretize(problem, options);
    CovarianceState st = initial_covariance(sys);

    const double t_cycle = sys.cycle_time();
    const double recurrence = sys.recurrence_time();
    int cycles = static_cast<int>(std::floor(options.measure_cycles));
    if (options.adapt_window && std::isfinite(recurrence)) {
        // Longer windows shrink the slope-fit bias; stay clear of the revival.
        const int budget = static_cast<int>(std::floor((0.7 * recurrence - sys.t_ramp) / t_cycle));
        cycles = std::clamp(budget, cycles, std::max(cycles, 100));
    }
    const double t_end = sys.t_ramp + cycles * t_cycle;

    out.modes_per_lead = options.modes_per_lead;
    out.dt = sys.dt;
    out.t_ramp = sys.t_ramp;
    out.t_end = t_end;
    out.recurrence_time = recurrence;
    out.measured_cycles = cycles;
    out.recurrence_exceeded = t_end > recurrence;

    double min_margin = std::numeric_limits<double>::infinity();
    bool checked = false;
    auto check_physicality = [&] {
        min_margin = std::min(min_margin, physicality_margin(st));
        checked = true;
    };

    // Ramp phase, physicality sampled once per cycle if requested.
    const int every = options.physicality_every_cycles;
    if (sys.t_ramp > 0.0) {
        const int ramp_cycles = static_cast<int>(std::ceil(sys.t_ramp / t_cycle));
        for (int k = 1; k <= ramp_cycles; ++k) {
            propagate(st, sys, std::min(sys.t_ramp, k * t_cycle));
            if (every > 0 && k % every == 0)
                check_physicality();
        }
        propagate(st, sys, sys.t_ramp);
    }

    // Measurement phase: cycle means of both lead occupations.
    std::vector<double> t_means, left_means, right_means;
    t_means.reserve(static_cast<std::size_t>(cycles));
    left_means.reserve(static_cast<std::size_t>(cycles));
    right_means.reserve(static_cast<std::size_t>(cycles));
    const double t_measure_start = st.time;
    for (int k = 0; k < cycles; ++k) {
        const double t_stop = t_measure_start + (k + 1) * t_cycle;
        double sum_t = 0.0, sum_l = 0.0, sum_r = 0.0;
        long samples = 0;
        while (st.time < t_stop - 0.5 * sys.dt) {
            propagate(st, sys, st.time + sys.dt);
            const SideOccupation occ = side_occupations(st, sys);
            sum_t += st.time;
            sum_l += occ.left;
            sum_r += occ.right;
            ++samples;
        }
        if (samples == 0)
            throw ConfigError("oracle: time step too coarse to sample a pump cycle");
        t_means.push_back(sum_t / samples);
        left_means.push_back(sum_l / samples);
        right_means.push_back(sum_r / samples);
        if (every > 0 && (k + 1) % every == 0)
            check_physicality();
    }
    if (!checked)
        check_physicality();

    const CurrentFit fit_r = measure_current(t_means, right_means);
    const CurrentFit fit_l = measure_current(t_means, left_means);
    out.simulated_j_right = fit_r.value;
    out.simulated_j_right_error = fit_r.uncertainty;
    out.simulated_j_left = fit_l.value;
    out.simulated_j_left_error = fit_l.uncertainty;
    out.min_physicality_margin = min_margin;
    out.physicality_ok = min_margin >= -options.physicality_tol;

    const double ana = out.analytic.j_right;
    const double diff = std::abs(out.simulated_j_right - ana);
    out.relative_deviation = std::abs(ana) < 1e-20 ? diff : diff / std::abs(ana);
    return out;
}

} // namespace phl
