// current.cpp — steady cycle-averaged photon currents between two leads

#include "phl/current.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <thread>

namespace phl {

namespace {

// Affine map eps_lead = offset + slope * x from the integration variable to a
// lead energy; slope is +1 or -1 for every term.
struct EnergyMap {
    double offset = 0.0;
    double slope = 1.0;

    double operator()(double x) const { return offset + slope * x; }
    double inverse(double e) const { return (e - offset) / slope; }
};

// Interval arithmetic helper: x-range on which map(x) lies in [e_lo, e_hi].
struct Range {
    double lo = 0.0, hi = 0.0;
    bool empty() const { return !(lo < hi); }
};

Range preimage(const EnergyMap& m, double e_lo, double e_hi) {
    double a = m.inverse(e_lo);
    double b = m.inverse(e_hi);
    if (a > b)
        std::swap(a, b);
    return {a, b};
}

Range intersect(Range x, Range y) {
    return {std::max(x.lo, y.lo), std::min(x.hi, y.hi)};
}

// Occupation combination entering the integrand.
enum class Occupation {
    Difference,   // n_L(a) - n_R(b)   (Landauer-like redistribution terms)
    Sum,          // n_L(a) + n_R(b) + 1   (anomalous pair term)
    Creation,     // (n_L(a) + 1) (n_R(b) + 1)
    Annihilation, // n_L(a) n_R(b)
};

struct TermRecipe {
    EnergyMap left;      // integration variable -> left-lead energy
    EnergyMap right;     // integration variable -> right-lead energy
    Occupation occ = Occupation::Difference;
    double sign = 1.0;   // overall sign of the term
    const char* name = "";
};

// The three integrals of the right current. x is the integration variable.
TermRecipe right_term(int which, double omega_p) {
    switch (which) {
    case 1: return {{0.0, 1.0}, {-omega_p, 1.0}, Occupation::Difference, 1.0, "term1"};
    case 2: return {{-omega_p, 1.0}, {0.0, 1.0}, Occupation::Difference, 1.0, "term2"};
    default: return {{0.0, 1.0}, {omega_p, -1.0}, Occupation::Sum, 1.0, "term3"};
    }
}

// Mirrored integrals for the left current: lead roles exchanged, which flips
// the sign of the difference terms and leaves the pair term symmetric.
TermRecipe left_term(int which, double omega_p) {
    switch (which) {
    case 1: return {{-omega_p, 1.0}, {0.0, 1.0}, Occupation::Difference, -1.0, "left term1"};
    case 2: return {{0.0, 1.0}, {-omega_p, 1.0}, Occupation::Difference, -1.0, "left term2"};
    default: return {{omega_p, -1.0}, {0.0, 1.0}, Occupation::Sum, 1.0, "left term3"};
    }
}

TermRecipe rate_term(bool creation, double omega_p) {
    TermRecipe s = right_term(3, omega_p);
    s.occ = creation ? Occupation::Creation : Occupation::Annihilation;
    s.name = creation ? "creation rate" : "annihilation rate";
    return s;
}

double occupation_factor(Occupation occ, double n_l, double n_r) {
    switch (occ) {
    case Occupation::Difference: return n_l - n_r;
    case Occupation::Sum: return n_l + n_r + 1.0;
    case Occupation::Creation: return (n_l + 1.0) * (n_r + 1.0);
    case Occupation::Annihilation: return n_l * n_r;
    }
    return 0.0; // unreachable
}

// Geometric ladder of offsets around a sharp resonance so the initial
// partition always resolves its core.
void resonance_ladder(std::vector<double>& points, double center, double width, const Range& r) {
    points.push_back(center);
    for (double d = width; d < (r.hi - r.lo); d *= 8.0) {
        points.push_back(center - d);
        points.push_back(center + d);
    }
}

struct AssembledTerm {
    Range support{0.0, -1.0};
    bool clipped = false; // support truncated at the energy cutoff
    std::vector<double> breakpoints;
    std::function<double(double)> integrand;
};

AssembledTerm assemble(const TransportProblem& p, const TermRecipe& recipe, double cutoff) {
    const LeadSpectrum& ll = p.left_lead();
    const LeadSpectrum& rl = p.right_lead();

    AssembledTerm t;
    Range band_l = preimage(recipe.left, ll.band_min, ll.band_max);
    Range band_r = preimage(recipe.right, rl.band_min, rl.band_max);
    Range r = intersect(band_l, band_r);
    r = intersect(r, {0.0, std::numeric_limits<double>::infinity()});
    if (r.empty()) {
        t.support = {0.0, 0.0};
        return t;
    }
    if (r.hi > cutoff) {
        t.clipped = true;
        r.hi = cutoff;
        if (r.empty()) {
            t.support = {0.0, 0.0};
            return t;
        }
    }
    // Keep the window strictly inside the positive-energy domain: at a
    // boundary where one lead energy is exactly zero, deep adaptive
    // subdivision of a divergent integrand can round a quadrature node onto
    // the endpoint itself, which the kernel rejects. One ulp is invisible to
    // any convergent integral.
    auto zero_energy = [&](double x) { return recipe.left(x) == 0.0 || recipe.right(x) == 0.0; };
    if (zero_energy(r.lo))
        r.lo = std::nextafter(r.lo, r.hi);
    if (zero_energy(r.hi))
        r.hi = std::nextafter(r.hi, r.lo);
    if (r.empty()) {
        t.support = {0.0, 0.0};
        return t;
    }
    t.support = r;

    // Band edges and tabulated-model nodes of either lead, mapped back to the
    // integration variable, seed the partition.
    auto add_lead_points = [&](const LeadSpectrum& lead, const EnergyMap& map) {
        auto add_energy = [&](double e) {
            if (std::isfinite(e))
                t.breakpoints.push_back(map.inverse(e));
        };
        add_energy(lead.band_min);
        add_energy(lead.band_max);
        if (lead.dos.kind == DosModel::Kind::Tabulated)
            for (double e : lead.dos.table.energies)
                add_energy(e);
        if (lead.coupling.kind == CouplingModel::Kind::Tabulated)
            for (double e : lead.coupling.table.energies)
                add_energy(e);
    };
    add_lead_points(ll, recipe.left);
    add_lead_points(rl, recipe.right);

    // Center resonances appear in the right-lead energy (the Green's function
    // argument); ladder them so the Lorentzian core is sampled.
    if (p.kernel.has_center()) {
        const double width = p.kernel.center_model().broadening;
        for (double e_res : p.kernel.resonance_energies())
            resonance_ladder(t.breakpoints, recipe.right.inverse(e_res), width, t.support);
    }

    const TransmissionKernel& kernel = p.kernel;
    const BathState& bath_l = p.left_bath;
    const BathState& bath_r = p.right_bath;
    const EnergyMap ml = recipe.left;
    const EnergyMap mr = recipe.right;
    const Occupation occ = recipe.occ;
    const double sign = recipe.sign;
    t.integrand = [&kernel, &bath_l, &bath_r, ml, mr, occ, sign](double x) {
        const double ea = ml(x);
        const double eb = mr(x);
        const double k = kernel(ea, eb);
        if (k == 0.0)
            return 0.0;
        return sign * k * occupation_factor(occ, bose_occupation(ea, bath_l),
                                            bose_occupation(eb, bath_r));
    };
    return t;
}

// Boundedness probe near a support endpoint that maps a non-regularised lead
// energy to zero: monotone blow-up across three decades flags a divergent
// integral before the adaptive quadrature burns its budget on it.
void check_ir_endpoint(const AssembledTerm& t, bool at_lower, const char* name) {
    const double w = t.support.hi - t.support.lo;
    const double base = at_lower ? t.support.lo : t.support.hi;
    const double dir = at_lower ? 1.0 : -1.0;
    double prev = std::abs(t.integrand(base + dir * 1e-3 * w));
    bool diverging = true;
    for (double off : {1e-5, 1e-7}) {
        double cur = std::abs(t.integrand(base + dir * off * w));
        if (!(cur > 30.0 * prev)) {
            diverging = false;
            break;
        }
        prev = cur;
    }
    if (diverging)
        throw ConfigError(std::string(name) +
                          ": integrand diverges at zero lead energy; the configured density of "
                          "states does not regularise the infrared endpoint");
}

void guard_ir(const TransportProblem& p, const TermRecipe& recipe, const AssembledTerm& t) {
    if (t.support.empty())
        return;
    auto waived = [](const LeadSpectrum& l) {
        return l.allow_ir_divergence && !l.ir_regular();
    };
    const bool waived_l = waived(p.left_lead());
    const bool waived_r = waived(p.right_lead());
    if (!waived_l && !waived_r)
        return;
    for (bool at_lower : {true, false}) {
        const double x = at_lower ? t.support.lo : t.support.hi;
        const bool zero_l = waived_l && std::abs(recipe.left(x)) < 1e-14;
        const bool zero_r = waived_r && std::abs(recipe.right(x)) < 1e-14;
        if (zero_l || zero_r)
            check_ir_endpoint(t, at_lower, recipe.name);
    }
}

TermResult evaluate_term(const TransportProblem& p, const TermRecipe& recipe, double cutoff) {
    AssembledTerm t = assemble(p, recipe, cutoff);
    if (t.support.empty())
        return {0.0, 0.0, true}; // no overlap: the term is exactly zero
    guard_ir(p, recipe, t);
    QuadratureResult q = integrate(t.integrand, t.support.lo, t.support.hi, p.tolerances,
                                   t.breakpoints);
    TermResult out{q.value, q.error, q.converged};
    if (t.clipped) {
        // Truncation tail, estimated from the integrand magnitude at the cut
        // times the thermal decay scale.
        const double t_scale = std::max(p.left_bath.temperature, p.right_bath.temperature);
        const double edge = t.support.hi - 1e-9 * (t.support.hi - t.support.lo);
        out.error += std::abs(t.integrand(edge)) * t_scale;
    }
    if (!out.converged)
        throw ConvergenceError(std::string(recipe.name) + ": transport integral reached the " +
                               "subdivision budget at estimated error " +
                               std::to_string(out.error));
    return out;
}

CurrentBreakdown compute_breakdown(const TransportProblem& p) {
    p.validate();
    const double wp = p.pump.frequency;
    const double cutoff = EnergyGrid::for_problem(p.left_lead(), p.right_lead(), p.left_bath,
                                                  p.right_bath, p.pump)
                              .cutoff;

    CurrentBreakdown b;
    b.term1 = evaluate_term(p, right_term(1, wp), cutoff);
    b.term2 = evaluate_term(p, right_term(2, wp), cutoff);
    b.term3 = evaluate_term(p, right_term(3, wp), cutoff);
    b.rate_creation = evaluate_term(p, rate_term(true, wp), cutoff);
    b.rate_annihilation = evaluate_term(p, rate_term(false, wp), cutoff);

    TermResult l1 = evaluate_term(p, left_term(1, wp), cutoff);
    TermResult l2 = evaluate_term(p, left_term(2, wp), cutoff);
    TermResult l3 = evaluate_term(p, left_term(3, wp), cutoff);

    b.j_right = b.term1.value + b.term2.value + b.term3.value;
    b.j_left = l1.value + l2.value + l3.value;
    b.j_normal = b.term1.value + b.term2.value;
    b.j_anomalous = b.term3.value;
    b.j_right_error = b.term1.error + b.term2.error + b.term3.error;
    b.j_left_error = l1.error + l2.error + l3.error;
    b.converged = b.term1.converged && b.term2.converged && b.term3.converged &&
                  b.rate_creation.converged && b.rate_annihilation.converged && l1.converged &&
                  l2.converged && l3.converged;
    return b;
}

} // namespace

// ---------------------------------------------------------------------------
// TransportProblem

TransportProblem TransportProblem::make(TransmissionKernel kernel, BathState left_bath,
                                        BathState right_bath, PumpDrive pump,
                                        QuadratureOptions tolerances) {
    TransportProblem p{std::move(kernel), left_bath, right_bath, pump, tolerances};
    p.validate();
    return p;
}

void TransportProblem::validate() const {
    left_bath.validate();
    right_bath.validate();
    pump.validate();
    if (kernel.left().side != Side::Left || kernel.right().side != Side::Right)
        throw ConfigError("problem: kernel leads must be tagged left and right respectively");
    if (!(tolerances.abs_tol > 0.0) || !(tolerances.rel_tol >= 0.0) ||
        tolerances.max_intervals < 1)
        throw ConfigError("problem: invalid quadrature tolerances");
}

CurrentBreakdown current_right(const TransportProblem& problem) {
    return compute_breakdown(problem);
}

CurrentBreakdown current_left(const TransportProblem& problem) {
    return compute_breakdown(problem);
}

RatePair golden_rule_rates(const TransportProblem& problem) {
    problem.validate();
    const double cutoff = EnergyGrid::for_problem(problem.left_lead(), problem.right_lead(),
                                                  problem.left_bath, problem.right_bath,
                                                  problem.pump)
                              .cutoff;
    RatePair r;
    r.creation = evaluate_term(problem, rate_term(true, problem.pump.frequency), cutoff);
    r.annihilation = evaluate_term(problem, rate_term(false, problem.pump.frequency), cutoff);
    return r;
}

// ---------------------------------------------------------------------------
// Sweep

SweepAxis sweep_axis_from_name(const std::string& name) {
    if (name == "pump_frequency")
        return SweepAxis::PumpFrequency;
    if (name == "temperature")
        return SweepAxis::Temperature;
    if (name == "coupling_scale")
        return SweepAxis::CouplingScale;
    throw ConfigError("sweep: unknown axis '" + name +
                      "' (expected pump_frequency, temperature or coupling_scale)");
}

const char* sweep_axis_name(SweepAxis axis) {
    switch (axis) {
    case SweepAxis::PumpFrequency: return "pump_frequency";
    case SweepAxis::Temperature: return "temperature";
    case SweepAxis::CouplingScale: return "coupling_scale";
    }
    return "?";
}

namespace {

TransportProblem problem_at(const TransportProblem& base, SweepAxis axis, double value) {
    TransportProblem p = base;
    switch (axis) {
    case SweepAxis::PumpFrequency:
        p.pump = PumpDrive::make(value);
        break;
    case SweepAxis::Temperature:
        p.left_bath = BathState::make(value);
        p.right_bath = BathState::make(value);
        break;
    case SweepAxis::CouplingScale:
        p.kernel = p.kernel.with_scale(value);
        break;
    }
    return p;
}

int worker_count(int points) {
    unsigned hw = std::thread::hardware_concurrency();
    int n = hw == 0 ? 1 : static_cast<int>(hw);
    if (const char* env = std::getenv("PHOTON_LANDAUER_THREADS")) {
        char* end = nullptr;
        long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap > 0)
            n = std::min(n, static_cast<int>(cap));
    }
    return std::max(1, std::min(n, points));
}

} // namespace

std::vector<SweepPoint> sweep(const TransportProblem& problem, SweepAxis axis, double from,
                              double to, int steps) {
    problem.validate();
    if (steps < 1)
        throw ConfigError("sweep: steps must be >= 1");
    if (!std::isfinite(from) || !std::isfinite(to))
        throw ConfigError("sweep: bounds must be finite");

    std::vector<SweepPoint> points(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        double v = steps == 1 ? from : from + (to - from) * i / (steps - 1);
        points[static_cast<std::size_t>(i)].axis_value = v;
    }

    auto run_point = [&](SweepPoint& pt) {
        try {
            pt.breakdown = current_right(problem_at(problem, axis, pt.axis_value));
            pt.ok = true;
        } catch (const std::exception& e) {
            pt.ok = false;
            pt.error = e.what();
        }
    };

    const int workers = worker_count(steps);
    if (workers <= 1) {
        for (auto& pt : points)
            run_point(pt);
        return points;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < points.size(); i = next.fetch_add(1))
                run_point(points[i]);
        });
    for (auto& th : pool)
        th.join();
    return points;
}

} // namespace phl
