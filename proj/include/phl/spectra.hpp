// spectra.hpp — lead spectral models, thermal occupations, energy bookkeeping
//
// Natural units throughout: hbar = k_B = 1 and every energy is quoted in
// multiples of a fixed reference frequency, so all quantities entering the
// library are plain dimensionless doubles.

#pragma once

#include <string>
#include <vector>

#include "phl/errors.hpp"

namespace phl {

enum class Side { Left, Right };

const char* side_name(Side s);

// Piecewise-linear table on an ascending energy grid.
struct Table1D {
    std::vector<double> energies; // strictly ascending, all >= 0
    std::vector<double> values;   // same length, all finite

    void validate(const std::string& what) const;
    // Linear interpolation; energies outside the covered range are a domain error.
    double operator()(double energy) const;
    bool covers(double energy) const;
};

// Density of states rho(eps) of a lead, valid inside the band only.
struct DosModel {
    enum class Kind { Constant, PowerLaw, Tabulated };

    Kind kind = Kind::Constant;
    double rho0 = 1.0;  // prefactor for Constant / PowerLaw
    int exponent = 2;   // PowerLaw: rho(eps) = rho0 * eps^exponent
    Table1D table;      // Tabulated

    static DosModel constant(double rho0);
    static DosModel power_law(double rho0, int exponent);
    static DosModel tabulated(std::vector<double> energies, std::vector<double> values);

    double operator()(double energy) const;
    // True if rho(eps) -> 0 at least linearly as eps -> 0 (infrared regular).
    bool vanishes_at_zero() const;
    void validate() const;
};

// Energy-dependent coupling amplitude lambda(eps); evaluated inside the band only.
struct CouplingModel {
    enum class Kind { Constant, Tabulated };

    Kind kind = Kind::Constant;
    double value = 0.0; // Constant
    Table1D table;      // Tabulated

    static CouplingModel constant(double value);
    static CouplingModel tabulated(std::vector<double> energies, std::vector<double> values);

    double operator()(double energy) const;
    void validate() const;
};

// One photonic reservoir: band support, density of states and coupling profile.
//
// Invariants (checked by validate(), called from the factory):
//   * 0 <= band_min < band_max, band_max may be +infinity;
//   * rho >= 0 on the band;
//   * if the band touches zero energy, rho must vanish at least linearly at
//     eps -> 0 unless `allow_ir_divergence` explicitly waives the check (the
//     transport integrals are then allowed to fail with a configuration error
//     when their support reaches the divergent endpoint).
struct LeadSpectrum {
    Side side = Side::Left;
    double band_min = 0.0;
    double band_max = 0.0; // may be +infinity
    DosModel dos;
    CouplingModel coupling;
    bool allow_ir_divergence = false;

    static LeadSpectrum make(Side side, double band_min, double band_max,
                             DosModel dos, CouplingModel coupling,
                             bool allow_ir_divergence = false);

    bool in_band(double energy) const;
    bool band_touches_zero() const;
    bool ir_regular() const; // band away from zero, or dos vanishes at zero
    void validate() const;
};

// rho(eps) of the lead: zero outside the band, model value inside.
double dos(double energy, const LeadSpectrum& lead);

// lambda(eps) of the lead: zero outside the band.
double coupling_amplitude(double energy, const LeadSpectrum& lead);

// Thermal state of a reservoir. Photon number is not conserved, so the
// chemical potential is pinned to zero and only kept as an explicit field to
// make that choice visible at call sites.
struct BathState {
    double temperature = 1.0;        // > 0
    double chemical_potential = 0.0; // must stay 0

    static BathState make(double temperature);
    void validate() const;
};

// Bose-Einstein occupation n(eps) = 1 / (exp(eps/T) - 1), eps > 0.
double bose_occupation(double energy, const BathState& bath);

// Sinusoidal parametric drive at frequency omega_p >= 0 (0 = static coupling).
struct PumpDrive {
    double frequency = 0.0;

    static PumpDrive make(double frequency);
    void validate() const;
};

// Shared energy bookkeeping for the transport integrals: the effective upper
// cutoff beyond which integrands are negligible.
struct EnergyGrid {
    double cutoff = 0.0; // > 0

    // max(finite band edges, 40 * max temperature + pump frequency)
    static EnergyGrid for_problem(const LeadSpectrum& left, const LeadSpectrum& right,
                                  const BathState& left_bath, const BathState& right_bath,
                                  const PumpDrive& pump);
};

} // namespace phl
