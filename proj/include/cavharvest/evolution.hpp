#pragma once

#include <memory>

#include <Eigen/Dense>

#include "cavharvest/cavity.hpp"
#include "cavharvest/gaussian.hpp"

namespace cavharvest {

/// Generator K = Omega F^sym of the stationary detector-field dynamics,
/// together with its spectral decomposition K = P diag(lambda) P^-1.
///
/// The decomposition is computed once; S(t) = Re(P e^{lambda t} P^-1) is then
/// cheap for any t and is shared by every initial state.
class PropagatorGenerator {
public:
    /// Spectral data in the form persisted by the generator cache.
    struct Spectrum {
        Eigen::VectorXcd eigenvalues;
        Eigen::MatrixXcd eigenvectors;          // P
        Eigen::MatrixXcd inverse_eigenvectors;  // P^-1
    };

    /// Assembles K from the cavity matrices and diagonalizes it.
    /// Throws NumericalError (with the config echoed) if F^sym is not
    /// positive definite or the eigensolver fails.
    static PropagatorGenerator build(const CavityConfig& cfg);

    /// Rebuilds a generator from previously computed spectral data.
    static PropagatorGenerator from_spectrum(const CavityConfig& cfg, Spectrum spectrum);

    const CavityConfig& config() const { return cfg_; }
    const Eigen::MatrixXd& generator() const { return k_; }
    const Spectrum& spectrum() const { return spectrum_; }
    std::size_t dimension() const { return static_cast<std::size_t>(k_.rows()); }

    /// max |P D P^-1 - K| / max |K|.
    double reconstruction_residual() const;

    /// Full S(t). Throws NumericalError if the realified product keeps an
    /// imaginary part above 1e-8.
    Eigen::MatrixXd propagator(double t) const;

    /// First four rows of S(t): all that the detector block of a diagonal
    /// initial state depends on.
    Eigen::MatrixXd detector_rows(double t) const;

private:
    PropagatorGenerator(CavityConfig cfg, Eigen::MatrixXd k, Spectrum spectrum);

    Eigen::MatrixXd realify(const Eigen::MatrixXcd& m) const;

    CavityConfig cfg_;
    Eigen::MatrixXd k_;
    Spectrum spectrum_;
};

/// Omega (F^sym_free + F^sym_int).
Eigen::MatrixXd generator_matrix(const CavityConfig& cfg);

inline PropagatorGenerator build_generator(const CavityConfig& cfg) {
    return PropagatorGenerator::build(cfg);
}

inline Eigen::MatrixXd propagator(const PropagatorGenerator& gen, double t) {
    return gen.propagator(t);
}

/// Fixed-step RK4 solution of dS/dt = K S, S(0) = I. Validation oracle only.
/// The final step is shortened so that the integration ends exactly at t.
Eigen::MatrixXd integrate_propagator(const CavityConfig& cfg, double t, double dt);

/// S sigma S^T, symmetrized.
CovarianceMatrix evolve(const CovarianceMatrix& sigma0, const Eigen::MatrixXd& S);

/// Detector-detector block (sigma_1, sigma_2, gamma_12) of an evolved state.
struct TwoModeState {
    Eigen::Matrix2d sigma1;
    Eigen::Matrix2d sigma2;
    Eigen::Matrix2d gamma12;

    Eigen::Matrix4d matrix() const;
    CovarianceMatrix covariance() const;

    static TwoModeState from_matrix(const Eigen::Matrix4d& m);

    /// max(|sigma1 - sigma2|, |gamma12 - gamma12^T|).
    double exchange_asymmetry() const;
};

/// Top-left 4x4 block. Throws DimensionError for states with fewer than two modes.
TwoModeState detector_state(const CovarianceMatrix& sigma);

/// Detector block of S sigma0 S^T for a diagonal sigma0, given only the
/// detector rows of S.
TwoModeState detector_state(const Eigen::MatrixXd& detector_rows, const Eigen::VectorXd& initial_diagonal);

}  // namespace cavharvest
