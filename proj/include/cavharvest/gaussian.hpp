#pragma once

// Gaussian-state primitives over a qp-interleaved phase space
// (q_0, p_0, q_1, p_1, ...). hbar = 1, vacuum covariance = identity,
// entropies in bits.

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace cavharvest {

/// Mode bookkeeping for a phase space of `n_modes` bosonic modes.
///
/// For the cavity scenario the first `detector_modes` modes are the two
/// detectors; the remaining 2N modes are field modes n = -N..-1, 1..N in that
/// order. The zero mode never appears.
struct PhaseSpaceLayout {
    std::size_t n_modes = 0;
    std::size_t detector_modes = 0;

    std::size_t dimension() const { return 2 * n_modes; }

    static PhaseSpaceLayout generic(std::size_t modes) { return {modes, 0}; }
    static PhaseSpaceLayout cavity(std::size_t field_modes_per_direction) {
        return {2 + 2 * field_modes_per_direction, 2};
    }

    /// Cavity mode number n of the field mode stored at layout index `mode`.
    int field_mode_number(std::size_t mode) const;

    bool operator==(const PhaseSpaceLayout&) const = default;
};

/// Real symmetric 2M x 2M second-moment matrix of a zero-mean Gaussian state.
///
/// Construction rejects non-square, odd-dimensional or asymmetric input
/// (tolerance 1e-10 relative to the largest entry). Physicality is not
/// enforced here; see is_physical().
class CovarianceMatrix {
public:
    explicit CovarianceMatrix(Eigen::MatrixXd entries);
    CovarianceMatrix(Eigen::MatrixXd entries, PhaseSpaceLayout layout);

    const Eigen::MatrixXd& matrix() const { return entries_; }
    const PhaseSpaceLayout& layout() const { return layout_; }
    std::size_t n_modes() const { return layout_.n_modes; }
    std::size_t dimension() const { return layout_.dimension(); }

    /// Every symplectic eigenvalue >= 1 - 1e-9.
    bool is_physical() const;

private:
    Eigen::MatrixXd entries_;
    PhaseSpaceLayout layout_;
};

/// Slack below 1 tolerated on symplectic eigenvalues before a state counts
/// as unphysical.
inline constexpr double kUnitSlack = 1e-9;

Eigen::MatrixXd symplectic_form(std::size_t n_modes);
Eigen::MatrixXd symplectic_form(const PhaseSpaceLayout& layout);

/// max |S Omega S^T - Omega|. Throws DimensionError for non-square or odd S.
double symplectic_residual(const Eigen::MatrixXd& S);
bool is_symplectic(const Eigen::MatrixXd& S, double tol);

/// Symplectic spectrum, ascending, from the eigenvalues of Omega*sigma.
///
/// Throws NumericalError if any eigenvalue of Omega*sigma has a real part
/// larger than 1e-8 * ||sigma||.
std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& sigma);

/// Single-mode entropy function in bits; f(1) = 0.
/// Arguments in [1 - 1e-9, 1) are clamped to 1, smaller ones throw DomainError.
double entropy_f(double x);

double von_neumann_entropy(const CovarianceMatrix& sigma);

/// Rows/columns of the selected modes, in the order given.
/// Throws ValidationError on out-of-range or repeated indices.
CovarianceMatrix partial_state(const CovarianceMatrix& sigma, std::span<const std::size_t> modes);

}  // namespace cavharvest
