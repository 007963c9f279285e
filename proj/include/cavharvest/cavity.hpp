#pragma once

// Two oscillator detectors coupled to a massless scalar field on a ring of
// length L (periodic cavity), with N right- and N left-moving modes kept.

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cavharvest/gaussian.hpp"

namespace cavharvest {

struct CavityConfig {
    double length = 100.0;
    int n_modes = 80;  // modes per direction; phase-space dimension is 4N + 4
    double detector_frequency = 0.4 * 3.14159265358979323846;
    double coupling = 0.05;
    double x1 = 0.0;
    double x2 = 0.0;

    /// Throws ValidationError when L <= 0, N < 1, Omega <= 0, lambda < 0,
    /// or a position is non-finite.
    void validate() const;

    PhaseSpaceLayout layout() const { return PhaseSpaceLayout::cavity(static_cast<std::size_t>(n_modes)); }
    std::size_t dimension() const { return layout().dimension(); }

    /// Same cavity with the detectors at x1 = 0, x2 = r.
    CavityConfig at_separation(double r) const;

    /// L = 100, N = 80, Omega = 40 pi / L (resonant with |n| = 20), lambda = 0.05.
    static CavityConfig reference(double separation = 0.0);

    std::string describe() const;

    bool operator==(const CavityConfig&) const = default;
};

/// Field temperature, k_B = 1. Zero means the vacuum.
class FieldTemperature {
public:
    FieldTemperature() = default;
    explicit FieldTemperature(double value);

    double value() const { return value_; }
    bool is_vacuum() const { return value_ == 0.0; }

private:
    double value_ = 0.0;
};

struct FieldMode {
    int n;
    double k;
    double omega;
};

/// 2N entries, n = -N..-1, 1..N, in layout order.
std::vector<FieldMode> mode_table(const CavityConfig& cfg);

/// Symplectic eigenvalue of a thermal mode, coth(omega / 2T); exactly 1 at T = 0.
double thermal_symplectic_eigenvalue(double omega, FieldTemperature temperature);

/// Diagonal free part of F^sym: Omega on the four detector quadratures,
/// omega_|n| twice per field mode.
Eigen::MatrixXd free_hamiltonian_matrix(const CavityConfig& cfg);

/// Off-diagonal detector-field coupling block of F^sym (detector momenta do
/// not couple).
Eigen::MatrixXd interaction_matrix(const CavityConfig& cfg);

/// Diagonal of I_4 (+) thermal field state; the initial state is diagonal, so
/// this is all a sweep needs.
Eigen::VectorXd initial_state_diagonal(const CavityConfig& cfg, FieldTemperature temperature);

CovarianceMatrix thermal_field_state(const CavityConfig& cfg, FieldTemperature temperature);
CovarianceMatrix initial_state(const CavityConfig& cfg, FieldTemperature temperature);

/// (1/L) sum_{n=1..N} (nu_n / omega_n) cos(omega_n r).
double cavity_correlation_function(double r, FieldTemperature temperature, const CavityConfig& cfg);

/// Three-dimensional free-space thermal Wightman function (T / 4 pi r) coth(pi T r).
/// Throws DomainError unless r > 0 and T > 0.
double free_space_correlation(double r, double temperature);

}  // namespace cavharvest
