// transmission.hpp — two-photon transmission kernels (direct and center-mediated)

#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "phl/spectra.hpp"

namespace phl {

// Non-interacting mesoscopic center: a quadratic photonic network coupled
// linearly to both leads. `spring_matrix` is the symmetric positive-definite
// frequency-squared matrix of the network; `left_coupling[m]` / `right_coupling[m]`
// give the energy-dependent amplitude tying center mode m to the respective lead.
struct CenterModel {
    Eigen::MatrixXd spring_matrix;            // n_c x n_c, symmetric positive definite
    std::vector<CouplingModel> left_coupling; // n_c entries
    std::vector<CouplingModel> right_coupling;
    double broadening = 1e-6; // eta > 0, retarded regulator
    bool dressed = false;     // include lead-induced level widths in g^r
    double dressed_pump_frequency = 0.0; // pump frequency used by the dressed widths

    static CenterModel make(Eigen::MatrixXd spring_matrix,
                            std::vector<CouplingModel> left_coupling,
                            std::vector<CouplingModel> right_coupling,
                            double broadening = 1e-6);

    int mode_count() const { return static_cast<int>(spring_matrix.rows()); }
    // sqrt of the spring-matrix eigenvalues: the bare resonance energies.
    std::vector<double> resonance_energies() const;
    void validate() const;
};

// Bare retarded Green's function of the center network,
//   g^r(omega) = [ (omega + i eta)^2 I - K_C ]^(-1),
// a complex symmetric matrix; the advanced function is its elementwise
// conjugate. Throws NumericalError if the inversion is numerically singular
// despite the regulator (eta too small for the requested omega).
Eigen::MatrixXcd center_greens_retarded(double omega, const CenterModel& center);

// Lead spectral weight matrix Lambda_X(eps) = rho_X(eps) lambda(eps) lambda(eps)^T / eps
// where lambda(eps) is the center-mode coupling vector for that side. Zero
// outside the lead band; eps <= 0 is a domain error. Rank one and positive
// semi-definite by construction.
Eigen::MatrixXd lambda_matrix(double energy, Side which, const LeadSpectrum& lead,
                              const CenterModel& center);

// Direct-contact transmission between lead energies eps1 (left) and eps2 (right):
//   T(eps1, eps2) = (pi/8) lambda(eps1, eps2)^2 rho_L(eps1) rho_R(eps2) / (eps1 eps2)
// with separable lambda(eps1, eps2) = lambda_L(eps1) * lambda_R(eps2).
// Zero whenever either energy is outside its band; eps <= 0 inside a band is
// a domain error.
double transmission_trivial(double eps1, double eps2, const LeadSpectrum& left,
                            const LeadSpectrum& right);

// Optional non-separable pair amplitude lambda(eps1, eps2) for the direct
// kernel, bilinear interpolation on a rectilinear grid.
struct Table2D {
    std::vector<double> energies_left;  // strictly ascending
    std::vector<double> energies_right; // strictly ascending
    std::vector<std::vector<double>> values; // values[i][j] at (left i, right j)

    void validate() const;
    double operator()(double eps1, double eps2) const;
};

// Transmission kernel used by the transport integrals. Owns the two lead
// spectra plus either nothing (direct, separable), a 2-D pair-amplitude table
// (direct, non-separable), or a center model. `coupling_scale` multiplies the
// lead-center / pair coupling amplitudes: the direct kernel scales as s^2 and
// the center-mediated kernel as s^4.
class TransmissionKernel {
public:
    static TransmissionKernel trivial(LeadSpectrum left, LeadSpectrum right);
    static TransmissionKernel trivial_pair_table(LeadSpectrum left, LeadSpectrum right,
                                                 Table2D pair_amplitude);
    static TransmissionKernel center(LeadSpectrum left, LeadSpectrum right, CenterModel model);

    // T(eps_left, eps_right); zero outside the band product.
    double operator()(double eps_left, double eps_right) const;

    const LeadSpectrum& left() const { return left_; }
    const LeadSpectrum& right() const { return right_; }
    bool has_center() const { return center_.has_value(); }
    bool has_pair_table() const { return pair_.has_value(); }
    const CenterModel& center_model() const;
    const Table2D& pair_table() const;

    double coupling_scale() const { return scale_; }
    // Copy of the kernel with the coupling scale set to `scale`.
    TransmissionKernel with_scale(double scale) const;

    // Energies at which the kernel is sharply peaked (center resonances);
    // empty for the direct kernel.
    std::vector<double> resonance_energies() const;

private:
    TransmissionKernel() = default;
    LeadSpectrum left_, right_;
    std::optional<Table2D> pair_;
    std::optional<CenterModel> center_;
    double scale_ = 1.0;
};

// Center-mediated transmission
//   T_C(eps_a, eps_b) = (pi/8) Tr[ g^r(eps_b) Lambda_R(eps_b) g^a(eps_b) Lambda_L(eps_a) ],
// evaluated at the right-lead energy eps_b in the Green's functions. The trace
// is real and non-negative; kernel must hold a center model.
double transmission_center(double eps_alpha, double eps_beta, const TransmissionKernel& kernel);

} // namespace phl
