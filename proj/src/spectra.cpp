// spectra.cpp — lead spectral models, thermal occupations, energy bookkeeping

#include "phl/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace phl {

namespace {

bool is_finite(double x) { return std::isfinite(x); }

} // namespace

const char* side_name(Side s) { return s == Side::Left ? "left" : "right"; }

// ---------------------------------------------------------------------------
// Table1D

void Table1D::validate(const std::string& what) const {
    if (energies.size() < 2)
        throw ConfigError(what + ": tabulated model needs at least two points");
    if (energies.size() != values.size())
        throw ConfigError(what + ": energy and value arrays differ in length");
    if (energies.front() < 0.0)
        throw ConfigError(what + ": tabulated energies must be non-negative");
    for (std::size_t i = 0; i + 1 < energies.size(); ++i)
        if (!(energies[i] < energies[i + 1]))
            throw ConfigError(what + ": tabulated energies must be strictly ascending");
    for (double v : values)
        if (!is_finite(v))
            throw ConfigError(what + ": tabulated values must be finite");
}

bool Table1D::covers(double energy) const {
    return !energies.empty() && energy >= energies.front() && energy <= energies.back();
}

double Table1D::operator()(double energy) const {
    if (!covers(energy))
        throw DomainError("tabulated model evaluated outside its energy range");
    auto it = std::upper_bound(energies.begin(), energies.end(), energy);
    if (it == energies.end()) // energy == back()
        return values.back();
    std::size_t hi = static_cast<std::size_t>(it - energies.begin());
    if (hi == 0)
        return values.front();
    std::size_t lo = hi - 1;
    double w = (energy - energies[lo]) / (energies[hi] - energies[lo]);
    return values[lo] + w * (values[hi] - values[lo]);
}

// ---------------------------------------------------------------------------
// DosModel

DosModel DosModel::constant(double rho0) {
    DosModel m;
    m.kind = Kind::Constant;
    m.rho0 = rho0;
    m.validate();
    return m;
}

DosModel DosModel::power_law(double rho0, int exponent) {
    DosModel m;
    m.kind = Kind::PowerLaw;
    m.rho0 = rho0;
    m.exponent = exponent;
    m.validate();
    return m;
}

DosModel DosModel::tabulated(std::vector<double> energies, std::vector<double> values) {
    DosModel m;
    m.kind = Kind::Tabulated;
    m.table.energies = std::move(energies);
    m.table.values = std::move(values);
    m.validate();
    return m;
}

void DosModel::validate() const {
    switch (kind) {
    case Kind::Constant:
        if (!is_finite(rho0) || rho0 < 0.0)
            throw ConfigError("dos: constant density of states must be finite and >= 0");
        break;
    case Kind::PowerLaw:
        if (!is_finite(rho0) || rho0 < 0.0)
            throw ConfigError("dos: power-law prefactor must be finite and >= 0");
        if (exponent < 0 || exponent > 4)
            throw ConfigError("dos: power-law exponent must lie in [0, 4]");
        break;
    case Kind::Tabulated:
        table.validate("dos");
        for (double v : table.values)
            if (v < 0.0)
                throw ConfigError("dos: tabulated density of states must be >= 0");
        break;
    }
}

double DosModel::operator()(double energy) const {
    switch (kind) {
    case Kind::Constant:
        return rho0;
    case Kind::PowerLaw:
        return rho0 * std::pow(energy, exponent);
    case Kind::Tabulated:
        return table(energy);
    }
    return 0.0; // unreachable
}

bool DosModel::vanishes_at_zero() const {
    switch (kind) {
    case Kind::Constant:
        return rho0 == 0.0;
    case Kind::PowerLaw:
        return exponent >= 1 || rho0 == 0.0;
    case Kind::Tabulated:
        // Require rho(0) = 0 on the table itself; the linear interpolant then
        // vanishes (at least) linearly towards zero.
        return table.energies.front() > 0.0 || table.values.front() == 0.0;
    }
    return false; // unreachable
}

// ---------------------------------------------------------------------------
// CouplingModel

CouplingModel CouplingModel::constant(double value) {
    CouplingModel m;
    m.kind = Kind::Constant;
    m.value = value;
    m.validate();
    return m;
}

CouplingModel CouplingModel::tabulated(std::vector<double> energies, std::vector<double> values) {
    CouplingModel m;
    m.kind = Kind::Tabulated;
    m.table.energies = std::move(energies);
    m.table.values = std::move(values);
    m.validate();
    return m;
}

void CouplingModel::validate() const {
    switch (kind) {
    case Kind::Constant:
        if (!is_finite(value))
            throw ConfigError("coupling: constant amplitude must be finite");
        break;
    case Kind::Tabulated:
        table.validate("coupling");
        break;
    }
}

double CouplingModel::operator()(double energy) const {
    return kind == Kind::Constant ? value : table(energy);
}

// ---------------------------------------------------------------------------
// LeadSpectrum

LeadSpectrum LeadSpectrum::make(Side side, double band_min, double band_max,
                                DosModel dos, CouplingModel coupling,
                                bool allow_ir_divergence) {
    LeadSpectrum lead;
    lead.side = side;
    lead.band_min = band_min;
    lead.band_max = band_max;
    lead.dos = std::move(dos);
    lead.coupling = std::move(coupling);
    lead.allow_ir_divergence = allow_ir_divergence;
    lead.validate();
    return lead;
}

void LeadSpectrum::validate() const {
    if (!is_finite(band_min) || band_min < 0.0)
        throw ConfigError(std::string(side_name(side)) + " lead: band_min must be finite and >= 0");
    if (std::isnan(band_max) || !(band_min < band_max))
        throw ConfigError(std::string(side_name(side)) + " lead: band_min < band_max required");
    dos.validate();
    coupling.validate();
    if (band_touches_zero() && !dos.vanishes_at_zero() && !allow_ir_divergence)
        throw ConfigError(std::string(side_name(side)) +
                          " lead: band touches zero energy but the density of states does not "
                          "vanish there; use a power-law dos (exponent >= 1) or set "
                          "allow_ir_divergence to accept the risk of divergent transport integrals");
    if (dos.kind == DosModel::Kind::Tabulated) {
        if (!dos.table.covers(band_min) ||
            (std::isfinite(band_max) && !dos.table.covers(band_max)))
            throw ConfigError(std::string(side_name(side)) + " lead: tabulated dos does not cover the band");
    }
    if (coupling.kind == CouplingModel::Kind::Tabulated) {
        if (!coupling.table.covers(band_min) ||
            (std::isfinite(band_max) && !coupling.table.covers(band_max)))
            throw ConfigError(std::string(side_name(side)) + " lead: tabulated coupling does not cover the band");
    }
}

bool LeadSpectrum::in_band(double energy) const {
    return energy >= band_min && energy <= band_max;
}

bool LeadSpectrum::band_touches_zero() const { return band_min == 0.0; }

bool LeadSpectrum::ir_regular() const {
    return !band_touches_zero() || dos.vanishes_at_zero();
}

double dos(double energy, const LeadSpectrum& lead) {
    if (!lead.in_band(energy))
        return 0.0;
    return lead.dos(energy);
}

double coupling_amplitude(double energy, const LeadSpectrum& lead) {
    if (!lead.in_band(energy))
        return 0.0;
    return lead.coupling(energy);
}

// ---------------------------------------------------------------------------
// BathState / occupations

BathState BathState::make(double temperature) {
    BathState b;
    b.temperature = temperature;
    b.validate();
    return b;
}

void BathState::validate() const {
    if (!is_finite(temperature) || temperature <= 0.0)
        throw ConfigError("bath: temperature must be finite and > 0");
    if (chemical_potential != 0.0)
        throw ConfigError("bath: photons carry no chemical potential; it must be 0");
}

double bose_occupation(double energy, const BathState& bath) {
    if (!(energy > 0.0))
        throw DomainError("bose_occupation: energy must be > 0");
    bath.validate();
    double x = energy / bath.temperature;
    if (x > 700.0) // exp would overflow; occupation is indistinguishable from 0
        return 0.0;
    return 1.0 / std::expm1(x);
}

// ---------------------------------------------------------------------------
// PumpDrive / EnergyGrid

PumpDrive PumpDrive::make(double frequency) {
    PumpDrive p;
    p.frequency = frequency;
    p.validate();
    return p;
}

void PumpDrive::validate() const {
    if (!is_finite(frequency) || frequency < 0.0)
        throw ConfigError("pump: frequency must be finite and >= 0");
}

EnergyGrid EnergyGrid::for_problem(const LeadSpectrum& left, const LeadSpectrum& right,
                                   const BathState& left_bath, const BathState& right_bath,
                                   const PumpDrive& pump) {
    double t_max = std::max(left_bath.temperature, right_bath.temperature);
    double cut = 40.0 * t_max + pump.frequency;
    if (std::isfinite(left.band_max))
        cut = std::max(cut, left.band_max);
    if (std::isfinite(right.band_max))
        cut = std::max(cut, right.band_max);
    EnergyGrid g;
    g.cutoff = cut;
    return g;
}

} // namespace phl
