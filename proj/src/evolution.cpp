#include "cavharvest/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Eigenvalues>

#include "cavharvest/errors.hpp"

namespace cavharvest {

namespace {

constexpr double kImaginaryResidualLimit = 1e-8;

}  // namespace

Eigen::MatrixXd generator_matrix(const CavityConfig& cfg) {
    const Eigen::MatrixXd f = free_hamiltonian_matrix(cfg) + interaction_matrix(cfg);
    return symplectic_form(cfg.layout()) * f;
}

PropagatorGenerator::PropagatorGenerator(CavityConfig cfg, Eigen::MatrixXd k, Spectrum spectrum)
    : cfg_(cfg), k_(std::move(k)), spectrum_(std::move(spectrum)) {}

PropagatorGenerator PropagatorGenerator::build(const CavityConfig& cfg) {
    cfg.validate();
    const Eigen::MatrixXd f = free_hamiltonian_matrix(cfg) + interaction_matrix(cfg);
    const Eigen::MatrixXd omega = symplectic_form(cfg.layout());

    // K = Omega F is similar to the antisymmetric A = F^1/2 Omega F^1/2 via
    // F^1/2, so K = F^-1/2 U diag(-i h) U^dagger F^1/2 where iA = U diag(h) U^dagger
    // is Hermitian. This needs F > 0, i.e. a Hamiltonian bounded below.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> f_solver(f);
    if (f_solver.info() != Eigen::Success) {
        throw NumericalError("eigensolver failed on F^sym for config " + cfg.describe());
    }
    const Eigen::VectorXd f_eig = f_solver.eigenvalues();
    if (f_eig.minCoeff() <= 0.0) {
        throw NumericalError("F^sym is not positive definite (min eigenvalue " +
                             std::to_string(f_eig.minCoeff()) + "); coupling too strong for config " +
                             cfg.describe());
    }
    const Eigen::MatrixXd& v = f_solver.eigenvectors();
    const Eigen::MatrixXd f_sqrt = v * f_eig.cwiseSqrt().asDiagonal() * v.transpose();
    const Eigen::MatrixXd f_inv_sqrt = v * f_eig.cwiseSqrt().cwiseInverse().asDiagonal() * v.transpose();

    Eigen::MatrixXd a = f_sqrt * omega * f_sqrt;
    a = 0.5 * (a - a.transpose()).eval();
    const Eigen::MatrixXcd h = std::complex<double>(0.0, 1.0) * a.cast<std::complex<double>>();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> h_solver(h);
    if (h_solver.info() != Eigen::Success) {
        throw NumericalError("eigensolver failed on generator for config " + cfg.describe());
    }
    const Eigen::MatrixXcd& u = h_solver.eigenvectors();

    Spectrum spectrum;
    spectrum.eigenvalues = std::complex<double>(0.0, -1.0) * h_solver.eigenvalues().cast<std::complex<double>>();
    spectrum.eigenvectors = f_inv_sqrt.cast<std::complex<double>>() * u;
    spectrum.inverse_eigenvectors = u.adjoint() * f_sqrt.cast<std::complex<double>>();

    return PropagatorGenerator(cfg, omega * f, std::move(spectrum));
}

PropagatorGenerator PropagatorGenerator::from_spectrum(const CavityConfig& cfg, Spectrum spectrum) {
    cfg.validate();
    const auto dim = static_cast<Eigen::Index>(cfg.dimension());
    if (spectrum.eigenvalues.size() != dim || spectrum.eigenvectors.rows() != dim ||
        spectrum.eigenvectors.cols() != dim || spectrum.inverse_eigenvectors.rows() != dim ||
        spectrum.inverse_eigenvectors.cols() != dim) {
        throw DimensionError("spectral data does not match config " + cfg.describe());
    }
    return PropagatorGenerator(cfg, generator_matrix(cfg), std::move(spectrum));
}

double PropagatorGenerator::reconstruction_residual() const {
    const Eigen::MatrixXcd rebuilt =
        spectrum_.eigenvectors * spectrum_.eigenvalues.asDiagonal() * spectrum_.inverse_eigenvectors;
    const double scale = k_.cwiseAbs().maxCoeff();
    return (rebuilt - k_.cast<std::complex<double>>()).cwiseAbs().maxCoeff() / scale;
}

Eigen::MatrixXd PropagatorGenerator::realify(const Eigen::MatrixXcd& m) const {
    const double imag = m.imag().cwiseAbs().maxCoeff();
    if (imag > kImaginaryResidualLimit) {
        throw NumericalError("propagator keeps imaginary residual " + std::to_string(imag) +
                             " for config " + cfg_.describe());
    }
    return m.real();
}

Eigen::MatrixXd PropagatorGenerator::propagator(double t) const {
    if (t == 0.0) {
        return Eigen::MatrixXd::Identity(k_.rows(), k_.cols());
    }
    const Eigen::VectorXcd phases = (spectrum_.eigenvalues * t).array().exp().matrix();
    const Eigen::MatrixXcd scaled = spectrum_.eigenvectors * phases.asDiagonal();
    return realify(scaled * spectrum_.inverse_eigenvectors);
}

Eigen::MatrixXd PropagatorGenerator::detector_rows(double t) const {
    if (t == 0.0) {
        return Eigen::MatrixXd::Identity(k_.rows(), k_.cols()).topRows(4);
    }
    const Eigen::VectorXcd phases = (spectrum_.eigenvalues * t).array().exp().matrix();
    const Eigen::MatrixXcd scaled = spectrum_.eigenvectors.topRows(4) * phases.asDiagonal();
    return realify(scaled * spectrum_.inverse_eigenvectors);
}

Eigen::MatrixXd integrate_propagator(const CavityConfig& cfg, double t, double dt) {
    if (!(dt > 0.0)) {
        throw ValidationError("integration step must be positive");
    }
    const Eigen::MatrixXd k = generator_matrix(cfg);
    const auto dim = k.rows();
    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(dim, dim);

    const double direction = t < 0.0 ? -1.0 : 1.0;
    const double span = std::abs(t);
    const auto steps = static_cast<long>(std::ceil(span / dt - 1e-9));
    Eigen::MatrixXd k1(dim, dim), k2(dim, dim), k3(dim, dim), k4(dim, dim);
    for (long i = 0; i < steps; ++i) {
        const double h = direction * std::min(dt, span - static_cast<double>(i) * dt);
        k1.noalias() = k * s;
        k2.noalias() = k * (s + 0.5 * h * k1);
        k3.noalias() = k * (s + 0.5 * h * k2);
        k4.noalias() = k * (s + h * k3);
        s += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!s.allFinite()) {
            throw NumericalError("RK4 integration overflowed");
        }
    }
    return s;
}

CovarianceMatrix evolve(const CovarianceMatrix& sigma0, const Eigen::MatrixXd& S) {
    if (S.rows() != S.cols() || static_cast<std::size_t>(S.rows()) != sigma0.dimension()) {
        throw DimensionError("propagator of size " + std::to_string(S.rows()) + "x" +
                             std::to_string(S.cols()) + " does not act on a state of dimension " +
                             std::to_string(sigma0.dimension()));
    }
    Eigen::MatrixXd out = S * sigma0.matrix() * S.transpose();
    out = 0.5 * (out + out.transpose()).eval();
    return CovarianceMatrix(std::move(out), sigma0.layout());
}

Eigen::Matrix4d TwoModeState::matrix() const {
    Eigen::Matrix4d m;
    m.topLeftCorner<2, 2>() = sigma1;
    m.topRightCorner<2, 2>() = gamma12;
    m.bottomLeftCorner<2, 2>() = gamma12.transpose();
    m.bottomRightCorner<2, 2>() = sigma2;
    return m;
}

CovarianceMatrix TwoModeState::covariance() const {
    return CovarianceMatrix(Eigen::MatrixXd(matrix()));
}

TwoModeState TwoModeState::from_matrix(const Eigen::Matrix4d& m) {
    return {m.topLeftCorner<2, 2>(), m.bottomRightCorner<2, 2>(), m.topRightCorner<2, 2>()};
}

double TwoModeState::exchange_asymmetry() const {
    return std::max((sigma1 - sigma2).cwiseAbs().maxCoeff(),
                    (gamma12 - gamma12.transpose()).cwiseAbs().maxCoeff());
}

TwoModeState detector_state(const CovarianceMatrix& sigma) {
    if (sigma.dimension() < 4) {
        throw DimensionError("detector state needs at least two modes, got " +
                             std::to_string(sigma.n_modes()));
    }
    return TwoModeState::from_matrix(sigma.matrix().topLeftCorner<4, 4>());
}

TwoModeState detector_state(const Eigen::MatrixXd& detector_rows, const Eigen::VectorXd& initial_diagonal) {
    if (detector_rows.rows() != 4 || detector_rows.cols() != initial_diagonal.size()) {
        throw DimensionError("detector rows and initial diagonal do not match");
    }
    Eigen::Matrix4d block = detector_rows * initial_diagonal.asDiagonal() * detector_rows.transpose();
    block = 0.5 * (block + block.transpose()).eval();
    return TwoModeState::from_matrix(block);
}

}  // namespace cavharvest
