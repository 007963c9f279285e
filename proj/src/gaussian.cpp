#include "cavharvest/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "cavharvest/errors.hpp"

namespace cavharvest {

int PhaseSpaceLayout::field_mode_number(std::size_t mode) const {
    if (mode < detector_modes || mode >= n_modes) {
        throw ValidationError("mode index " + std::to_string(mode) + " is not a field mode");
    }
    const auto per_direction = static_cast<int>((n_modes - detector_modes) / 2);
    const auto k = static_cast<int>(mode - detector_modes);
    return k < per_direction ? k - per_direction : k - per_direction + 1;
}

namespace {

void check_square_even(const Eigen::MatrixXd& m, const char* what) {
    if (m.rows() != m.cols()) {
        throw DimensionError(std::string(what) + " must be square, got " + std::to_string(m.rows()) +
                             "x" + std::to_string(m.cols()));
    }
    if (m.rows() % 2 != 0) {
        throw DimensionError(std::string(what) + " must have even dimension, got " +
                             std::to_string(m.rows()));
    }
}

}  // namespace

CovarianceMatrix::CovarianceMatrix(Eigen::MatrixXd entries)
    : CovarianceMatrix(std::move(entries), PhaseSpaceLayout{}) {}

CovarianceMatrix::CovarianceMatrix(Eigen::MatrixXd entries, PhaseSpaceLayout layout)
    : entries_(std::move(entries)), layout_(layout) {
    check_square_even(entries_, "covariance matrix");
    if (layout_.n_modes == 0) {
        layout_ = PhaseSpaceLayout::generic(static_cast<std::size_t>(entries_.rows() / 2));
    }
    if (layout_.dimension() != static_cast<std::size_t>(entries_.rows())) {
        throw DimensionError("covariance matrix dimension " + std::to_string(entries_.rows()) +
                             " does not match layout dimension " +
                             std::to_string(layout_.dimension()));
    }
    if (!entries_.allFinite()) {
        throw ValidationError("covariance matrix has non-finite entries");
    }
    const double scale = std::max(1.0, entries_.cwiseAbs().maxCoeff());
    const double asym = (entries_ - entries_.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-10 * scale) {
        throw ValidationError("covariance matrix is not symmetric (max asymmetry " +
                              std::to_string(asym) + ")");
    }
}

bool CovarianceMatrix::is_physical() const {
    try {
        const auto nu = symplectic_eigenvalues(*this);
        return nu.front() >= 1.0 - kUnitSlack;
    } catch (const NumericalError&) {
        return false;
    }
}

Eigen::MatrixXd symplectic_form(std::size_t n_modes) {
    if (n_modes == 0) {
        throw ValidationError("symplectic form needs at least one mode");
    }
    const auto dim = static_cast<Eigen::Index>(2 * n_modes);
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; i += 2) {
        omega(i, i + 1) = 1.0;
        omega(i + 1, i) = -1.0;
    }
    return omega;
}

Eigen::MatrixXd symplectic_form(const PhaseSpaceLayout& layout) {
    return symplectic_form(layout.n_modes);
}

double symplectic_residual(const Eigen::MatrixXd& S) {
    check_square_even(S, "symplectic candidate");
    const Eigen::MatrixXd omega = symplectic_form(static_cast<std::size_t>(S.rows() / 2));
    return (S * omega * S.transpose() - omega).cwiseAbs().maxCoeff();
}

bool is_symplectic(const Eigen::MatrixXd& S, double tol) {
    return symplectic_residual(S) <= tol;
}

std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& sigma) {
    const Eigen::MatrixXd& m = sigma.matrix();
    const Eigen::MatrixXd omega_sigma = symplectic_form(sigma.n_modes()) * m;

    Eigen::EigenSolver<Eigen::MatrixXd> solver(omega_sigma, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("eigensolver failed on Omega*sigma");
    }
    const Eigen::VectorXcd ev = solver.eigenvalues();

    const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
    std::vector<double> magnitudes;
    magnitudes.reserve(static_cast<std::size_t>(ev.size()));
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (std::abs(ev[i].real()) > 1e-8 * norm) {
            throw NumericalError("Omega*sigma eigenvalue with real part " +
                                 std::to_string(ev[i].real()) +
                                 "; state is not positive definite or numerically degenerate");
        }
        magnitudes.push_back(std::abs(ev[i].imag()));
    }
    std::sort(magnitudes.begin(), magnitudes.end());

    // Eigenvalues come in +-i nu pairs; average each adjacent pair.
    std::vector<double> nu;
    nu.reserve(sigma.n_modes());
    for (std::size_t i = 0; i + 1 < magnitudes.size(); i += 2) {
        nu.push_back(0.5 * (magnitudes[i] + magnitudes[i + 1]));
    }
    return nu;
}

double entropy_f(double x) {
    if (!(x >= 1.0 - kUnitSlack)) {
        throw DomainError("entropy_f argument " + std::to_string(x) + " is below 1");
    }
    if (x <= 1.0) {
        return 0.0;
    }
    const double a = 0.5 * (x + 1.0);
    const double b = 0.5 * (x - 1.0);
    return a * std::log2(a) - b * std::log2(b);
}

double von_neumann_entropy(const CovarianceMatrix& sigma) {
    double s = 0.0;
    for (double nu : symplectic_eigenvalues(sigma)) {
        s += entropy_f(nu);
    }
    return s;
}

CovarianceMatrix partial_state(const CovarianceMatrix& sigma, std::span<const std::size_t> modes) {
    if (modes.empty()) {
        throw ValidationError("partial_state needs at least one mode");
    }
    std::vector<bool> seen(sigma.n_modes(), false);
    for (std::size_t mode : modes) {
        if (mode >= sigma.n_modes()) {
            throw ValidationError("mode index " + std::to_string(mode) + " out of range (" +
                                  std::to_string(sigma.n_modes()) + " modes)");
        }
        if (seen[mode]) {
            throw ValidationError("mode index " + std::to_string(mode) + " repeated");
        }
        seen[mode] = true;
    }

    const auto k = static_cast<Eigen::Index>(modes.size());
    Eigen::MatrixXd out(2 * k, 2 * k);
    for (Eigen::Index a = 0; a < k; ++a) {
        for (Eigen::Index b = 0; b < k; ++b) {
            const auto ra = static_cast<Eigen::Index>(2 * modes[static_cast<std::size_t>(a)]);
            const auto rb = static_cast<Eigen::Index>(2 * modes[static_cast<std::size_t>(b)]);
            out.block<2, 2>(2 * a, 2 * b) = sigma.matrix().block<2, 2>(ra, rb);
        }
    }
    return CovarianceMatrix(std::move(out));
}

}  // namespace cavharvest
