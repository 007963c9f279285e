#include "cavharvest/decomposition.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "cavharvest/errors.hpp"
#include "cavharvest/gaussian.hpp"

namespace cavharvest {

namespace {

double single_mode_nu(const Eigen::Matrix2d& s) {
    const double det = s.determinant();
    if (det < 1.0 - 2.0 * kUnitSlack) {
        throw DomainError("single-mode state with determinant " + std::to_string(det) + " is unphysical");
    }
    return std::sqrt(std::max(det, 1.0 - 2.0 * kUnitSlack));
}

}  // namespace

Eigen::Matrix4d beam_splitter_matrix() {
    const double s = 1.0 / std::numbers::sqrt2;
    Eigen::Matrix4d m;
    m << -s, 0, s, 0,
         0, -s, 0, s,
         s, 0, s, 0,
         0, s, 0, s;
    return m;
}

PlusMinusDecomposition beam_split(const TwoModeState& state) {
    const Eigen::Matrix4d sd = state.matrix();
    const double scale = std::max(1.0, sd.cwiseAbs().maxCoeff());
    const double asym = state.exchange_asymmetry();
    if (asym > 1e-8 * scale) {
        throw ValidationError("detector state is not exchange symmetric (asymmetry " +
                              std::to_string(asym) + ")");
    }

    const Eigen::Matrix4d bs = beam_splitter_matrix();
    const Eigen::Matrix4d out = bs * sd * bs.transpose();

    PlusMinusDecomposition d;
    d.sigma_minus = out.topLeftCorner<2, 2>();
    d.sigma_plus = out.bottomRightCorner<2, 2>();
    d.sigma_minus = 0.5 * (d.sigma_minus + d.sigma_minus.transpose()).eval();
    d.sigma_plus = 0.5 * (d.sigma_plus + d.sigma_plus.transpose()).eval();
    d.off_block_residual = out.topRightCorner<2, 2>().cwiseAbs().maxCoeff();
    d.nu_minus = single_mode_nu(d.sigma_minus);
    d.nu_plus = single_mode_nu(d.sigma_plus);
    return d;
}

TwoModeState reassemble(const PlusMinusDecomposition& d) {
    const Eigen::Matrix2d local = 0.5 * (d.sigma_plus + d.sigma_minus);
    return {local, local, 0.5 * (d.sigma_plus - d.sigma_minus)};
}

std::vector<ModeCoupling> mode_function_couplings(double r, const CavityConfig& cfg) {
    std::vector<ModeCoupling> out;
    for (const auto& mode : mode_table(cfg)) {
        const double half_phase = 0.5 * mode.k * r;
        out.push_back({mode.n, mode.omega, std::numbers::sqrt2 * std::abs(std::cos(half_phase)),
                       std::numbers::sqrt2 * std::abs(std::sin(half_phase))});
    }
    return out;
}

double thermal_approx_mutual_information(double nu1, double nu2) {
    if (!(nu1 >= 1.0 - kUnitSlack) || !(nu2 >= 1.0 - kUnitSlack)) {
        throw DomainError("symplectic eigenvalues must be >= 1");
    }
    return 2.0 * entropy_f(0.5 * (nu1 + nu2)) - entropy_f(nu1) - entropy_f(nu2);
}

PassiveEntanglementVerdict passive_entanglement_criterion(const PlusMinusDecomposition& d) {
    std::array<double, 4> eig{};
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> minus(d.sigma_minus);
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> plus(d.sigma_plus);
    eig[0] = minus.eigenvalues()[0];
    eig[1] = minus.eigenvalues()[1];
    eig[2] = plus.eigenvalues()[0];
    eig[3] = plus.eigenvalues()[1];
    std::sort(eig.begin(), eig.end());
    const double product = eig[0] * eig[1];
    // Products within 1e-12 of 1 are roundoff around a classical state.
    return {product < 1.0 - 1e-12, product};
}

}  // namespace cavharvest
