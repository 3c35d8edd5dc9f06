// test_current.cpp — cycle-averaged transport integrals and sweeps

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "phl/current.hpp"

using namespace phl;

namespace {

LeadSpectrum flat_lead(Side s, double lo, double hi, double lambda) {
    return LeadSpectrum::make(s, lo, hi, DosModel::constant(1.0),
                              CouplingModel::constant(lambda));
}

QuadratureOptions tight() {
    QuadratureOptions q;
    q.abs_tol = 1e-14;
    q.rel_tol = 1e-12;
    return q;
}

// Two overlapping bands with pair-creation support: left [0.1, 1.2] with
// lambda 0.2, right [0.2, 1.0] with lambda 0.5, pump 0.55, T_L 0.7, T_R 0.4.
TransportProblem ungapped_reference() {
    return TransportProblem::make(
        TransmissionKernel::trivial(flat_lead(Side::Left, 0.1, 1.2, 0.2),
                                    flat_lead(Side::Right, 0.2, 1.0, 0.5)),
        BathState::make(0.7), BathState::make(0.4), PumpDrive::make(0.55), tight());
}

// Disjoint bands bridged by the pump: only the redistribution term with the
// left energy below the right one survives.
TransportProblem gapped_reference() {
    return TransportProblem::make(
        TransmissionKernel::trivial(flat_lead(Side::Left, 0.5, 1.5, 0.1),
                                    flat_lead(Side::Right, 2.0, 3.0, 1.0)),
        BathState::make(0.5), BathState::make(0.5), PumpDrive::make(1.6), tight());
}

} // namespace

TEST_CASE("ungapped reference: all five integrals against frozen values") {
    const CurrentBreakdown b = current_right(ungapped_reference());
    // frozen independent high-precision quadrature results
    CHECK(b.term1.value == doctest::Approx(-2.10789551462403106e-3).epsilon(1e-10));
    CHECK(b.term2.value == doctest::Approx(2.41274906358556088e-2).epsilon(1e-10));
    CHECK(b.term3.value == doctest::Approx(7.44925436783023114e-2).epsilon(1e-10));
    CHECK(b.rate_creation.value == doctest::Approx(1.0884064693885130e-1).epsilon(1e-10));
    CHECK(b.rate_annihilation.value == doctest::Approx(3.43481032605489915e-2).epsilon(1e-10));
    CHECK(b.j_right == doctest::Approx(9.65121387995338892e-2).epsilon(1e-10));
    CHECK(b.j_left == doctest::Approx(5.2472948557070734e-2).epsilon(1e-10));
    CHECK(b.converged);
    CHECK(b.j_right_error < 1e-9);

    // decomposition is exact by construction
    CHECK(b.j_normal + b.j_anomalous == b.j_right);
    CHECK(b.j_normal == b.term1.value + b.term2.value);
    CHECK(b.j_anomalous == b.term3.value);

    // detailed balance across the pump gap
    CHECK(b.rate_creation.value - b.rate_annihilation.value ==
          doctest::Approx(b.term3.value).epsilon(1e-9));

    // both entry points compute the same record
    const CurrentBreakdown b2 = current_left(ungapped_reference());
    CHECK(b2.j_left == b.j_left);
    CHECK(b2.j_right == b.j_right);
}

TEST_CASE("gapped reference: single surviving term and conservation") {
    const CurrentBreakdown b = current_right(gapped_reference());
    CHECK(b.term2.value == doctest::Approx(4.42386396043096102e-4).epsilon(1e-10));
    // the other two supports are empty: exact zeros, no quadrature ran
    CHECK(b.term1.value == 0.0);
    CHECK(b.term1.error == 0.0);
    CHECK(b.term3.value == 0.0);
    CHECK(b.j_right == b.term2.value);
    CHECK(b.j_right > 0.0); // quanta flow toward the higher band
    // with no pair creation the two currents balance exactly
    CHECK(std::abs(b.j_right + b.j_left) <= 2.0 * (b.j_right_error + b.j_left_error) + 1e-15);
}

TEST_CASE("undriven problem with equal temperatures carries no current") {
    TransportProblem p = TransportProblem::make(
        TransmissionKernel::trivial(flat_lead(Side::Left, 0.2, 1.0, 0.3),
                                    flat_lead(Side::Right, 0.2, 1.0, 0.3)),
        BathState::make(0.5), BathState::make(0.5), PumpDrive::make(0.0));
    const CurrentBreakdown b = current_right(p);
    // identical occupations cancel pointwise and the pair term has no support
    CHECK(b.j_right == 0.0);
    CHECK(b.j_left == 0.0);
    CHECK(b.j_anomalous == 0.0);
}

TEST_CASE("decoupled leads carry exactly zero") {
    TransportProblem p = ungapped_reference();
    p.kernel = p.kernel.with_scale(0.0);
    const CurrentBreakdown b = current_right(p);
    CHECK(b.j_right == 0.0);
    CHECK(b.j_left == 0.0);
    CHECK(b.converged);
}

TEST_CASE("direct kernel current scales with the square of the coupling scale") {
    TransportProblem p = ungapped_reference();
    const double j1 = current_right(p).j_right;
    p.kernel = p.kernel.with_scale(2.0);
    const double j4 = current_right(p).j_right;
    CHECK(j4 == doctest::Approx(4.0 * j1).epsilon(1e-9));
}

TEST_CASE("center kernel current scales with the fourth power of the coupling scale") {
    Eigen::MatrixXd kc(1, 1);
    kc << 0.64; // resonance at 0.8, inside the bands
    const CenterModel center = CenterModel::make(kc, {CouplingModel::constant(0.3)},
                                                 {CouplingModel::constant(0.4)}, 1e-3);
    TransportProblem p = TransportProblem::make(
        TransmissionKernel::center(flat_lead(Side::Left, 0.1, 1.2, 1.0),
                                   flat_lead(Side::Right, 0.2, 1.0, 1.0), center),
        BathState::make(0.7), BathState::make(0.4), PumpDrive::make(0.55));
    const CurrentBreakdown b1 = current_right(p);
    CHECK(b1.converged);
    CHECK(b1.j_anomalous > 0.0);
    p.kernel = p.kernel.with_scale(0.5);
    const CurrentBreakdown b2 = current_right(p);
    CHECK(b2.j_right == doctest::Approx(b1.j_right / 16.0).epsilon(1e-8));

    // detailed balance also holds for the resonant kernel
    CHECK(b1.rate_creation.value - b1.rate_annihilation.value ==
          doctest::Approx(b1.term3.value).epsilon(1e-8));
}

TEST_CASE("lead-side bookkeeping is validated") {
    // right-tagged spectrum in the left slot
    CHECK_THROWS_AS(TransportProblem::make(
                        TransmissionKernel::trivial(flat_lead(Side::Right, 0.1, 1.2, 0.2),
                                                    flat_lead(Side::Right, 0.2, 1.0, 0.5)),
                        BathState::make(0.7), BathState::make(0.4), PumpDrive::make(0.55)),
                    ConfigError);
    CHECK_THROWS_AS(BathState::make(0.0), ConfigError);
    CHECK_THROWS_AS(PumpDrive::make(-0.1), ConfigError);
}

TEST_CASE("waived infrared divergence in the pair term is rejected at runtime") {
    // constant dos down to zero energy needs the explicit waiver to construct,
    // and the pair-term integrand then blows up as 1/eps^2 at the endpoint
    LeadSpectrum left = LeadSpectrum::make(Side::Left, 0.0, 1.0, DosModel::constant(1.0),
                                           CouplingModel::constant(0.3), true);
    LeadSpectrum right = LeadSpectrum::make(Side::Right, 0.0, 1.0, DosModel::constant(1.0),
                                            CouplingModel::constant(0.3), true);
    TransportProblem p = TransportProblem::make(TransmissionKernel::trivial(left, right),
                                                BathState::make(0.5), BathState::make(0.5),
                                                PumpDrive::make(0.5));
    CHECK_THROWS_AS(current_right(p), ConfigError);
}

TEST_CASE("infrared-regular bands touching zero integrate cleanly") {
    LeadSpectrum left = LeadSpectrum::make(Side::Left, 0.0, 1.0, DosModel::power_law(1.0, 2),
                                           CouplingModel::constant(0.3));
    LeadSpectrum right = LeadSpectrum::make(Side::Right, 0.0, 1.0, DosModel::power_law(1.0, 2),
                                            CouplingModel::constant(0.3));
    TransportProblem p = TransportProblem::make(TransmissionKernel::trivial(left, right),
                                                BathState::make(0.5), BathState::make(0.5),
                                                PumpDrive::make(0.5));
    const CurrentBreakdown b = current_right(p);
    CHECK(b.converged);
    CHECK(b.j_anomalous > 0.0);
    // equal temperatures: the redistribution terms cancel pointwise, up to
    // the rounding of the kernel's multiplication order under the swap
    CHECK(std::abs(b.j_normal) <=
          1e-14 * (std::abs(b.term1.value) + std::abs(b.term2.value)) + 1e-300);
}

TEST_CASE("a genuinely log-divergent pair term fails loudly") {
    // rho ~ eps passes the construction rule (bounded kernel) but the thermal
    // 1/eps of the occupation still makes the pair integral diverge — the
    // subdivision budget must run out rather than return a quiet number
    LeadSpectrum left = LeadSpectrum::make(Side::Left, 0.0, 1.0, DosModel::power_law(1.0, 1),
                                           CouplingModel::constant(0.3));
    LeadSpectrum right = LeadSpectrum::make(Side::Right, 0.0, 1.0, DosModel::power_law(1.0, 1),
                                            CouplingModel::constant(0.3));
    QuadratureOptions budget;
    budget.max_intervals = 200;
    TransportProblem p = TransportProblem::make(TransmissionKernel::trivial(left, right),
                                                BathState::make(0.5), BathState::make(0.5),
                                                PumpDrive::make(0.5), budget);
    CHECK_THROWS_AS(current_right(p), ConvergenceError);
}

TEST_CASE("sweep covers the axis and matches pointwise evaluation") {
    const TransportProblem p = ungapped_reference();
    const auto points = sweep(p, SweepAxis::PumpFrequency, 0.4, 0.7, 4);
    REQUIRE(points.size() == 4);
    CHECK(points.front().axis_value == 0.4);
    CHECK(points.back().axis_value == 0.7);
    for (std::size_t i = 0; i + 1 < points.size(); ++i)
        CHECK(points[i].axis_value < points[i + 1].axis_value);
    for (const auto& pt : points)
        CHECK(pt.ok);

    // a sweep point is bit-identical to evaluating the modified problem directly
    TransportProblem q = p;
    q.pump = PumpDrive::make(points[1].axis_value);
    CHECK(points[1].breakdown.j_right == current_right(q).j_right);
    CHECK(points[1].breakdown.j_left == current_right(q).j_left);
}

TEST_CASE("temperature sweep sets both baths") {
    const TransportProblem p = ungapped_reference();
    const auto points = sweep(p, SweepAxis::Temperature, 0.4, 0.7, 2);
    REQUIRE(points.size() == 2);
    TransportProblem q = p;
    q.left_bath = BathState::make(0.4);
    q.right_bath = BathState::make(0.4);
    CHECK(points[0].breakdown.j_right == current_right(q).j_right);
}

TEST_CASE("sweep records per-point failures without aborting") {
    const TransportProblem p = ungapped_reference();
    const auto points = sweep(p, SweepAxis::CouplingScale, -0.5, 1.0, 2);
    REQUIRE(points.size() == 2);
    CHECK_FALSE(points[0].ok); // negative coupling scale is a configuration error
    CHECK_FALSE(points[0].error.empty());
    CHECK(points[1].ok);
    CHECK(points[1].breakdown.j_right == current_right(p).j_right);
    CHECK_THROWS_AS(sweep(p, SweepAxis::CouplingScale, 0.0, 1.0, 0), ConfigError);
}

TEST_CASE("thread cap does not change sweep results") {
    const TransportProblem p = ungapped_reference();
    setenv("PHOTON_LANDAUER_THREADS", "1", 1);
    const auto serial = sweep(p, SweepAxis::PumpFrequency, 0.3, 0.9, 5);
    setenv("PHOTON_LANDAUER_THREADS", "3", 1);
    const auto pooled = sweep(p, SweepAxis::PumpFrequency, 0.3, 0.9, 5);
    unsetenv("PHOTON_LANDAUER_THREADS");
    REQUIRE(serial.size() == pooled.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].ok == pooled[i].ok);
        CHECK(serial[i].breakdown.j_right == pooled[i].breakdown.j_right);
        CHECK(serial[i].breakdown.j_left == pooled[i].breakdown.j_left);
    }
}

TEST_CASE("sweep axis names round-trip") {
    CHECK(sweep_axis_from_name("pump_frequency") == SweepAxis::PumpFrequency);
    CHECK(sweep_axis_from_name("temperature") == SweepAxis::Temperature);
    CHECK(sweep_axis_from_name("coupling_scale") == SweepAxis::CouplingScale);
    CHECK(sweep_axis_name(SweepAxis::Temperature) == std::string("temperature"));
    CHECK_THROWS_AS(sweep_axis_from_name("bias"), ConfigError);
}
