// transmission.cpp — two-photon transmission kernels (direct and center-mediated)

#include "phl/transmission.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace phl {

namespace {

using Complex = std::complex<double>;

constexpr double kPi = std::numbers::pi;

// Invert m = (omega + i eta)^2 I - K (optionally width-dressed) with an
// explicit residual check: the regulator keeps the matrix formally invertible,
// but an eta far below the working precision at this omega produces garbage
// that the residual exposes.
Eigen::MatrixXcd checked_inverse(const Eigen::MatrixXcd& m) {
    Eigen::MatrixXcd g = m.partialPivLu().inverse();
    if (!g.allFinite())
        throw NumericalError("center Green's function: singular matrix (broadening too small)");
    const double residual = (m * g - Eigen::MatrixXcd::Identity(m.rows(), m.cols()))
                                .cwiseAbs()
                                .maxCoeff();
    if (residual > 1e-6)
        throw NumericalError("center Green's function: inversion residual " +
                             std::to_string(residual) + " (broadening too small for this energy)");
    return g;
}

// Coupling vector of one side at the given energy (zero outside the band).
Eigen::VectorXd coupling_vector(double energy, const LeadSpectrum& lead, const CenterModel& c,
                                Side which) {
    const auto& models = which == Side::Left ? c.left_coupling : c.right_coupling;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(c.mode_count());
    if (!lead.in_band(energy))
        return v;
    for (int m = 0; m < c.mode_count(); ++m)
        v[m] = models[static_cast<std::size_t>(m)](energy);
    return v;
}

// Retarded Green's function used inside the transmission trace: bare, or with
// the imaginary (width) part of the lead self-energies when `dressed` is set.
// The static right-lead coupling contributes at omega, the modulated left-lead
// coupling at omega +/- pump frequency with weight 1/4 each. The real (shift)
// part of the self-energy is omitted.
Eigen::MatrixXcd kernel_greens(double omega, const TransmissionKernel& k) {
    const CenterModel& c = k.center_model();
    const int n = c.mode_count();
    const Complex z(omega, c.broadening);
    Eigen::MatrixXcd m = -c.spring_matrix.cast<Complex>();
    m.diagonal().array() += z * z;
    if (c.dressed) {
        const double s2 = k.coupling_scale() * k.coupling_scale();
        const double wp = c.dressed_pump_frequency;
        Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(n, n);
        if (omega > 0.0)
            gamma += (kPi / 2.0) * lambda_matrix(omega, Side::Right, k.right(), c);
        if (omega + wp > 0.0)
            gamma += (kPi / 8.0) * lambda_matrix(omega + wp, Side::Left, k.left(), c);
        if (omega - wp > 0.0)
            gamma += (kPi / 8.0) * lambda_matrix(omega - wp, Side::Left, k.left(), c);
        m += Complex(0.0, s2) * gamma.cast<Complex>();
    }
    return checked_inverse(m);
}

} // namespace

// ---------------------------------------------------------------------------
// CenterModel

CenterModel CenterModel::make(Eigen::MatrixXd spring_matrix,
                              std::vector<CouplingModel> left_coupling,
                              std::vector<CouplingModel> right_coupling,
                              double broadening) {
    CenterModel c;
    c.spring_matrix = std::move(spring_matrix);
    c.left_coupling = std::move(left_coupling);
    c.right_coupling = std::move(right_coupling);
    c.broadening = broadening;
    c.validate();
    return c;
}

void CenterModel::validate() const {
    const auto n = spring_matrix.rows();
    if (n < 1 || spring_matrix.cols() != n)
        throw ConfigError("center: spring matrix must be square and non-empty");
    if (n > 64)
        throw ConfigError("center: at most 64 modes supported");
    if (!spring_matrix.allFinite())
        throw ConfigError("center: spring matrix must be finite");
    const double scale = std::max(1.0, spring_matrix.cwiseAbs().maxCoeff());
    if ((spring_matrix - spring_matrix.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw ConfigError("center: spring matrix must be symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(spring_matrix, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw ConfigError("center: spring matrix must be positive definite");
    if (left_coupling.size() != static_cast<std::size_t>(n) ||
        right_coupling.size() != static_cast<std::size_t>(n))
        throw ConfigError("center: need one coupling model per mode and side");
    for (const auto& m : left_coupling)
        m.validate();
    for (const auto& m : right_coupling)
        m.validate();
    if (!(std::isfinite(broadening)) || broadening <= 0.0)
        throw ConfigError("center: broadening must be finite and > 0");
    if (!(std::isfinite(dressed_pump_frequency)) || dressed_pump_frequency < 0.0)
        throw ConfigError("center: dressed pump frequency must be finite and >= 0");
}

std::vector<double> CenterModel::resonance_energies() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(spring_matrix, Eigen::EigenvaluesOnly);
    std::vector<double> out(static_cast<std::size_t>(es.eigenvalues().size()));
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        out[static_cast<std::size_t>(i)] = std::sqrt(es.eigenvalues()[i]);
    return out;
}

Eigen::MatrixXcd center_greens_retarded(double omega, const CenterModel& center) {
    const Complex z(omega, center.broadening);
    Eigen::MatrixXcd m = -center.spring_matrix.cast<Complex>();
    m.diagonal().array() += z * z;
    return checked_inverse(m);
}

Eigen::MatrixXd lambda_matrix(double energy, Side which, const LeadSpectrum& lead,
                              const CenterModel& center) {
    if (!(energy > 0.0))
        throw DomainError("lambda_matrix: energy must be > 0");
    if (!lead.in_band(energy))
        return Eigen::MatrixXd::Zero(center.mode_count(), center.mode_count());
    const Eigen::VectorXd v = coupling_vector(energy, lead, center, which);
    return (lead.dos(energy) / energy) * (v * v.transpose());
}

// ---------------------------------------------------------------------------
// Direct kernel

double transmission_trivial(double eps1, double eps2, const LeadSpectrum& left,
                            const LeadSpectrum& right) {
    if (!left.in_band(eps1) || !right.in_band(eps2))
        return 0.0;
    if (!(eps1 > 0.0) || !(eps2 > 0.0))
        throw DomainError("transmission_trivial: energies must be > 0");
    const double lam = left.coupling(eps1) * right.coupling(eps2);
    return (kPi / 8.0) * lam * lam * left.dos(eps1) * right.dos(eps2) / (eps1 * eps2);
}

// ---------------------------------------------------------------------------
// Table2D

void Table2D::validate() const {
    auto check_axis = [](const std::vector<double>& e, const char* what) {
        if (e.size() < 2)
            throw ConfigError(std::string("pair amplitude: ") + what + " axis needs two points");
        if (e.front() < 0.0)
            throw ConfigError(std::string("pair amplitude: ") + what + " energies must be >= 0");
        for (std::size_t i = 0; i + 1 < e.size(); ++i)
            if (!(e[i] < e[i + 1]))
                throw ConfigError(std::string("pair amplitude: ") + what +
                                  " energies must be strictly ascending");
    };
    check_axis(energies_left, "left");
    check_axis(energies_right, "right");
    if (values.size() != energies_left.size())
        throw ConfigError("pair amplitude: row count must match the left axis");
    for (const auto& row : values) {
        if (row.size() != energies_right.size())
            throw ConfigError("pair amplitude: column count must match the right axis");
        for (double v : row)
            if (!std::isfinite(v))
                throw ConfigError("pair amplitude: values must be finite");
    }
}

double Table2D::operator()(double eps1, double eps2) const {
    auto locate = [](const std::vector<double>& e, double x, const char* what) {
        if (x < e.front() || x > e.back())
            throw DomainError(std::string("pair amplitude evaluated outside its ") + what +
                              " energy range");
        auto it = std::upper_bound(e.begin(), e.end(), x);
        std::size_t hi = std::min(static_cast<std::size_t>(it - e.begin()), e.size() - 1);
        std::size_t lo = hi == 0 ? 0 : hi - 1;
        double w = hi == lo ? 0.0 : (x - e[lo]) / (e[hi] - e[lo]);
        return std::pair<std::size_t, double>(lo, w);
    };
    auto [i, u] = locate(energies_left, eps1, "left");
    auto [j, v] = locate(energies_right, eps2, "right");
    std::size_t i1 = std::min(i + 1, energies_left.size() - 1);
    std::size_t j1 = std::min(j + 1, energies_right.size() - 1);
    const double f00 = values[i][j], f01 = values[i][j1];
    const double f10 = values[i1][j], f11 = values[i1][j1];
    return (1.0 - u) * ((1.0 - v) * f00 + v * f01) + u * ((1.0 - v) * f10 + v * f11);
}

// ---------------------------------------------------------------------------
// TransmissionKernel

TransmissionKernel TransmissionKernel::trivial(LeadSpectrum left, LeadSpectrum right) {
    TransmissionKernel k;
    k.left_ = std::move(left);
    k.right_ = std::move(right);
    k.left_.validate();
    k.right_.validate();
    return k;
}

TransmissionKernel TransmissionKernel::trivial_pair_table(LeadSpectrum left, LeadSpectrum right,
                                                          Table2D pair_amplitude) {
    TransmissionKernel k = trivial(std::move(left), std::move(right));
    pair_amplitude.validate();
    if (!std::isfinite(k.left_.band_max) || !std::isfinite(k.right_.band_max))
        throw ConfigError("pair amplitude: tabulated kernel requires finite bands");
    if (pair_amplitude.energies_left.front() > k.left_.band_min ||
        pair_amplitude.energies_left.back() < k.left_.band_max ||
        pair_amplitude.energies_right.front() > k.right_.band_min ||
        pair_amplitude.energies_right.back() < k.right_.band_max)
        throw ConfigError("pair amplitude: table must cover the band product");
    k.pair_ = std::move(pair_amplitude);
    return k;
}

TransmissionKernel TransmissionKernel::center(LeadSpectrum left, LeadSpectrum right,
                                              CenterModel model) {
    TransmissionKernel k = trivial(std::move(left), std::move(right));
    model.validate();
    k.center_ = std::move(model);
    return k;
}

const CenterModel& TransmissionKernel::center_model() const {
    if (!center_)
        throw ConfigError("kernel: no center model attached");
    return *center_;
}

const Table2D& TransmissionKernel::pair_table() const {
    if (!pair_)
        throw ConfigError("kernel: no pair-amplitude table attached");
    return *pair_;
}

TransmissionKernel TransmissionKernel::with_scale(double scale) const {
    if (!(std::isfinite(scale)) || scale < 0.0)
        throw ConfigError("kernel: coupling scale must be finite and >= 0");
    TransmissionKernel k = *this;
    k.scale_ = scale;
    return k;
}

std::vector<double> TransmissionKernel::resonance_energies() const {
    return center_ ? center_->resonance_energies() : std::vector<double>{};
}

double TransmissionKernel::operator()(double eps_left, double eps_right) const {
    if (!left_.in_band(eps_left) || !right_.in_band(eps_right))
        return 0.0;
    if (center_)
        return transmission_center(eps_left, eps_right, *this);
    if (!(eps_left > 0.0) || !(eps_right > 0.0))
        throw DomainError("kernel: energies must be > 0");
    double lam = pair_ ? (*pair_)(eps_left, eps_right)
                       : left_.coupling(eps_left) * right_.coupling(eps_right);
    lam *= scale_;
    return (kPi / 8.0) * lam * lam * left_.dos(eps_left) * right_.dos(eps_right) /
           (eps_left * eps_right);
}

double transmission_center(double eps_alpha, double eps_beta, const TransmissionKernel& kernel) {
    const CenterModel& c = kernel.center_model();
    if (!kernel.left().in_band(eps_alpha) || !kernel.right().in_band(eps_beta))
        return 0.0;
    if (!(eps_alpha > 0.0) || !(eps_beta > 0.0))
        throw DomainError("transmission_center: energies must be > 0");
    // Both Green's functions are evaluated at the right-lead energy.
    const Eigen::MatrixXcd g = kernel_greens(eps_beta, kernel);
    const Eigen::MatrixXd lam_r = lambda_matrix(eps_beta, Side::Right, kernel.right(), c);
    const Eigen::MatrixXd lam_l = lambda_matrix(eps_alpha, Side::Left, kernel.left(), c);
    const Complex trace =
        (g * lam_r.cast<Complex>() * g.conjugate() * lam_l.cast<Complex>()).trace();
    const double s2 = kernel.coupling_scale() * kernel.coupling_scale();
    return (kPi / 8.0) * s2 * s2 * trace.real();
}

} // namespace phl
