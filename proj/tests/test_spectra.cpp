// test_spectra.cpp — occupations, spectral models and their invariants

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "phl/spectra.hpp"

using namespace phl;

TEST_CASE("bose occupation reference values") {
    // frozen: 1/(e - 1) and 1/(e^2 - 1)
    CHECK(bose_occupation(1.0, BathState::make(1.0)) ==
          doctest::Approx(0.581976706869326424).epsilon(1e-14));
    CHECK(bose_occupation(0.5, BathState::make(0.25)) ==
          doctest::Approx(0.156517642749665652).epsilon(1e-14));
    // far below the thermal scale the occupation underflows to an exact zero
    CHECK(bose_occupation(1.0, BathState::make(1e-3)) == 0.0);
}

TEST_CASE("bose occupation satisfies detailed balance") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ue(1e-3, 50.0), ut(0.05, 5.0);
    for (int i = 0; i < 200; ++i) {
        const double e = ue(rng);
        const BathState bath = BathState::make(ut(rng));
        const double n = bose_occupation(e, bath);
        const double x = e / bath.temperature;
        if (x > 700.0)
            continue;
        // n = exp(-e/T) (n + 1), exact for the Bose function
        CHECK(n == doctest::Approx(std::exp(-x) * (n + 1.0)).epsilon(1e-13));
        CHECK(n >= 0.0);
    }
}

TEST_CASE("bose occupation rejects non-positive energy and bad baths") {
    CHECK_THROWS_AS(bose_occupation(0.0, BathState::make(1.0)), DomainError);
    CHECK_THROWS_AS(bose_occupation(-0.2, BathState::make(1.0)), DomainError);
    CHECK_THROWS_AS(BathState::make(0.0), ConfigError);
    CHECK_THROWS_AS(BathState::make(-1.0), ConfigError);
    BathState b = BathState::make(1.0);
    b.chemical_potential = 0.1; // photons: no chemical potential allowed
    CHECK_THROWS_AS(b.validate(), ConfigError);
}

TEST_CASE("density of states models") {
    const LeadSpectrum flat = LeadSpectrum::make(Side::Left, 1.0, 2.0, DosModel::constant(2.0),
                                                 CouplingModel::constant(1.0));
    CHECK(dos(1.5, flat) == 2.0);
    CHECK(dos(2.0, flat) == 2.0);  // band edges belong to the band
    CHECK(dos(0.5, flat) == 0.0);  // outside
    CHECK(dos(2.5, flat) == 0.0);

    const LeadSpectrum cubicish = LeadSpectrum::make(
        Side::Left, 0.0, 1.0, DosModel::power_law(3.0, 2), CouplingModel::constant(1.0));
    CHECK(dos(0.5, cubicish) == doctest::Approx(0.75).epsilon(1e-15));

    const LeadSpectrum tab = LeadSpectrum::make(
        Side::Right, 0.0, 2.0, DosModel::tabulated({0.0, 1.0, 2.0}, {0.0, 1.0, 0.5}),
        CouplingModel::constant(1.0));
    CHECK(dos(0.5, tab) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(dos(1.5, tab) == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("tabulated models are validated") {
    CHECK_THROWS_AS(DosModel::tabulated({1.0}, {1.0}), ConfigError);              // too short
    CHECK_THROWS_AS(DosModel::tabulated({1.0, 0.5}, {1.0, 1.0}), ConfigError);    // not ascending
    CHECK_THROWS_AS(DosModel::tabulated({0.0, 1.0}, {1.0}), ConfigError);         // length mismatch
    CHECK_THROWS_AS(DosModel::tabulated({0.0, 1.0}, {1.0, -0.5}), ConfigError);   // negative dos
    CHECK_THROWS_AS(DosModel::power_law(1.0, -1), ConfigError);
    CHECK_THROWS_AS(CouplingModel::tabulated({0.0, 1.0}, {1.0, std::nan("")}), ConfigError);
}

TEST_CASE("lead band and infrared-regularity invariants") {
    CHECK_THROWS_AS(LeadSpectrum::make(Side::Left, 2.0, 1.0, DosModel::constant(1.0),
                                       CouplingModel::constant(1.0)),
                    ConfigError); // inverted band
    CHECK_THROWS_AS(LeadSpectrum::make(Side::Left, -0.5, 1.0, DosModel::constant(1.0),
                                       CouplingModel::constant(1.0)),
                    ConfigError); // negative energies

    // band touching zero with a non-vanishing dos is rejected ...
    CHECK_THROWS_AS(LeadSpectrum::make(Side::Left, 0.0, 1.0, DosModel::constant(1.0),
                                       CouplingModel::constant(1.0)),
                    ConfigError);
    CHECK_THROWS_AS(LeadSpectrum::make(Side::Left, 0.0, 1.0, DosModel::power_law(1.0, 0),
                                       CouplingModel::constant(1.0)),
                    ConfigError);
    // ... unless the caller explicitly waives the check
    const LeadSpectrum waived = LeadSpectrum::make(Side::Left, 0.0, 1.0, DosModel::constant(1.0),
                                                   CouplingModel::constant(1.0), true);
    CHECK_FALSE(waived.ir_regular());
    // linear-or-faster vanishing passes
    const LeadSpectrum lin = LeadSpectrum::make(Side::Left, 0.0, 1.0, DosModel::power_law(1.0, 1),
                                                CouplingModel::constant(1.0));
    CHECK(lin.ir_regular());
    // a gapped band never needs regularisation
    const LeadSpectrum gapped = LeadSpectrum::make(Side::Left, 0.5, 1.0, DosModel::constant(1.0),
                                                   CouplingModel::constant(1.0));
    CHECK(gapped.ir_regular());

    // tabulated models must cover the band
    CHECK_THROWS_AS(LeadSpectrum::make(Side::Left, 0.0, 3.0,
                                       DosModel::tabulated({0.0, 2.0}, {0.0, 1.0}),
                                       CouplingModel::constant(1.0)),
                    ConfigError);

    // half-infinite bands are allowed
    const LeadSpectrum open_band = LeadSpectrum::make(
        Side::Right, 1.0, std::numeric_limits<double>::infinity(), DosModel::constant(1.0),
        CouplingModel::constant(1.0));
    CHECK(open_band.in_band(1e9));
    CHECK(coupling_amplitude(0.5, open_band) == 0.0);
}

TEST_CASE("energy cutoff covers bands and thermal tails") {
    const LeadSpectrum l = LeadSpectrum::make(Side::Left, 0.5, 1.5, DosModel::constant(1.0),
                                              CouplingModel::constant(1.0));
    const LeadSpectrum r = LeadSpectrum::make(Side::Right, 2.0, 3.0, DosModel::constant(1.0),
                                              CouplingModel::constant(1.0));
    const EnergyGrid g = EnergyGrid::for_problem(l, r, BathState::make(0.5), BathState::make(0.5),
                                                 PumpDrive::make(1.6));
    CHECK(g.cutoff == doctest::Approx(21.6)); // 40 T + omega_p dominates here
    const EnergyGrid g2 = EnergyGrid::for_problem(l, r, BathState::make(0.01),
                                                  BathState::make(0.01), PumpDrive::make(0.0));
    CHECK(g2.cutoff == doctest::Approx(3.0)); // band edge dominates
}
