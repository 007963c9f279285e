#pragma once

// Independent reference implementations used by the tests.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "cavharvest/evolution.hpp"
#include "cavharvest/gaussian.hpp"

namespace testsupport {

inline Eigen::Matrix2d rotation(double theta) {
    Eigen::Matrix2d r;
    r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    return r;
}

/// Product of random elementary symplectic maps on `modes` modes:
/// phase rotations, squeezers, shears and beam splitters.
inline Eigen::MatrixXd random_symplectic(std::size_t modes, std::mt19937_64& rng, int factors = 12,
                                         double strength = 0.6) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, modes - 1);
    const auto dim = static_cast<Eigen::Index>(2 * modes);
    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(dim, dim);
    for (int f = 0; f < factors; ++f) {
        Eigen::MatrixXd g = Eigen::MatrixXd::Identity(dim, dim);
        const auto m = static_cast<Eigen::Index>(2 * pick(rng));
        switch (f % 4) {
        case 0:
            g.block<2, 2>(m, m) = rotation(std::numbers::pi * u(rng));
            break;
        case 1: {
            const double r = strength * u(rng);
            g(m, m) = std::exp(r);
            g(m + 1, m + 1) = std::exp(-r);
            break;
        }
        case 2:
            g(m, m + 1) = strength * u(rng);
            break;
        default: {
            if (modes < 2) {
                break;
            }
            auto n = static_cast<Eigen::Index>(2 * pick(rng));
            if (n == m) {
                n = (m + 2) % dim;
            }
            const double th = std::numbers::pi * u(rng);
            for (int k = 0; k < 2; ++k) {
                g(m + k, m + k) = std::cos(th);
                g(n + k, n + k) = std::cos(th);
                g(m + k, n + k) = std::sin(th);
                g(n + k, m + k) = -std::sin(th);
            }
            break;
        }
        }
        s = g * s;
    }
    return s;
}

/// Random physical state with the given symplectic spectrum.
inline cavharvest::CovarianceMatrix random_state(const std::vector<double>& nus, std::mt19937_64& rng,
                                                 double strength = 0.6) {
    const auto dim = static_cast<Eigen::Index>(2 * nus.size());
    Eigen::VectorXd diag(dim);
    for (std::size_t i = 0; i < nus.size(); ++i) {
        diag[static_cast<Eigen::Index>(2 * i)] = nus[i];
        diag[static_cast<Eigen::Index>(2 * i + 1)] = nus[i];
    }
    const Eigen::MatrixXd s = random_symplectic(nus.size(), rng, 12, strength);
    Eigen::MatrixXd sigma = s * diag.asDiagonal() * s.transpose();
    sigma = 0.5 * (sigma + sigma.transpose()).eval();
    return cavharvest::CovarianceMatrix(sigma);
}

/// Williamson spectrum from the Hermitian matrix i sigma^1/2 Omega sigma^1/2,
/// whose eigenvalues are +-nu_k.
inline std::vector<double> williamson_spectrum(const Eigen::MatrixXd& sigma) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma);
    const Eigen::MatrixXd root =
        es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
    const Eigen::MatrixXd a = root * cavharvest::symplectic_form(static_cast<std::size_t>(sigma.rows() / 2)) * root;
    const Eigen::MatrixXcd h = std::complex<double>(0.0, 1.0) * a.cast<std::complex<double>>();
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> hs(h);
    std::vector<double> out;
    for (Eigen::Index i = 0; i < hs.eigenvalues().size(); ++i) {
        if (hs.eigenvalues()[i] > 0.0) {
            out.push_back(hs.eigenvalues()[i]);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline double entropy_bits(double x) {
    if (x <= 1.0) {
        return 0.0;
    }
    const double a = 0.5 * (x + 1.0);
    const double b = 0.5 * (x - 1.0);
    return a * std::log2(a) - b * std::log2(b);
}

/// Determinant of sigma_1 conditioned on a Gaussian measurement of mode 2 with
/// seed covariance R(theta) diag(s, 1/s) R(theta)^T; s = 0 is the homodyne limit.
inline double conditional_det(const cavharvest::TwoModeState& st, double theta, double log_s, bool homodyne) {
    if (homodyne) {
        const Eigen::Vector2d u(std::cos(theta), std::sin(theta));
        const Eigen::Matrix2d proj = u * u.transpose() / u.dot(st.sigma2 * u);
        return (st.sigma1 - st.gamma12 * proj * st.gamma12.transpose()).determinant();
    }
    const Eigen::Matrix2d r = rotation(theta);
    const Eigen::Matrix2d seed = r * Eigen::Vector2d(std::exp(log_s), std::exp(-log_s)).asDiagonal() * r.transpose();
    return (st.sigma1 - st.gamma12 * (st.sigma2 + seed).inverse() * st.gamma12.transpose()).determinant();
}

/// Numerical minimum of the conditional determinant: coarse grid over
/// (theta, log s) plus the homodyne edge, then repeated local zooming.
inline double brute_force_min_conditional_det(const cavharvest::TwoModeState& st) {
    double best = 1e300;
    double bt = 0.0;
    double bs = 0.0;
    bool bh = false;
    for (int i = 0; i < 180; ++i) {
        const double th = std::numbers::pi * i / 180.0;
        for (int j = 0; j <= 160; ++j) {
            const double ls = -8.0 + 0.1 * j;
            const double v = conditional_det(st, th, ls, false);
            if (v < best) {
                best = v;
                bt = th;
                bs = ls;
                bh = false;
            }
        }
        const double v = conditional_det(st, th, 0.0, true);
        if (v < best) {
            best = v;
            bt = th;
            bh = true;
        }
    }
    double wt = std::numbers::pi / 180.0;
    double ws = 0.1;
    for (int round = 0; round < 12; ++round) {
        const double ct = bt;
        const double cs = bs;
        for (int i = -10; i <= 10; ++i) {
            const double th = ct + wt * i / 5.0;
            if (bh) {
                const double v = conditional_det(st, th, 0.0, true);
                if (v < best) {
                    best = v;
                    bt = th;
                }
                continue;
            }
            for (int j = -10; j <= 10; ++j) {
                const double ls = cs + ws * j / 5.0;
                const double v = conditional_det(st, th, ls, false);
                if (v < best) {
                    best = v;
                    bt = th;
                    bs = ls;
                }
            }
        }
        wt *= 0.3;
        ws *= 0.3;
    }
    return best;
}

inline double brute_force_discord(const cavharvest::TwoModeState& st) {
    const auto nu = williamson_spectrum(st.matrix());
    const double e = brute_force_min_conditional_det(st);
    return entropy_bits(std::sqrt(st.sigma2.determinant())) - entropy_bits(nu[0]) - entropy_bits(nu[1]) +
           entropy_bits(std::sqrt(e));
}

/// Two-mode squeezed vacuum with squeezing parameter r.
inline cavharvest::TwoModeState two_mode_squeezed(double r) {
    const double c = std::cosh(2.0 * r);
    const double s = std::sinh(2.0 * r);
    cavharvest::TwoModeState st;
    st.sigma1 = c * Eigen::Matrix2d::Identity();
    st.sigma2 = st.sigma1;
    st.gamma12 << s, 0.0, 0.0, -s;
    return st;
}

}  // namespace testsupport
