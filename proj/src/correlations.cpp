#include "cavharvest/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cavharvest/decomposition.hpp"
#include "cavharvest/errors.hpp"
#include "cavharvest/gaussian.hpp"

namespace cavharvest {

namespace {

double clamp_radicand(double value, double scale, const char* what) {
    const double tol = kNumericZero * std::max(1.0, scale);
    if (value < -tol) {
        throw NumericalError(std::string(what) + " radicand " + std::to_string(value) + " is negative");
    }
    return std::max(value, 0.0);
}

TwoModeState swapped(const TwoModeState& s) {
    return {s.sigma2, s.sigma1, s.gamma12.transpose()};
}

}  // namespace

Determinants Determinants::of(const TwoModeState& s) {
    return {s.sigma1.determinant(), s.sigma2.determinant(), s.gamma12.determinant(),
            s.matrix().determinant()};
}

double mutual_information(const TwoModeState& s) {
    const double local = von_neumann_entropy(CovarianceMatrix(Eigen::MatrixXd(s.sigma1))) +
                         von_neumann_entropy(CovarianceMatrix(Eigen::MatrixXd(s.sigma2)));
    return local - von_neumann_entropy(s.covariance());
}

double partially_transposed_nu_minus(const TwoModeState& s) {
    const auto d = Determinants::of(s);
    const double delta_tilde = d.alpha + d.det_beta - 2.0 * d.det_gamma;
    const double radicand = delta_tilde * delta_tilde - 4.0 * d.delta;
    if (radicand < -kNumericZero * std::max(1.0, delta_tilde * delta_tilde)) {
        throw DomainError("partially transposed spectrum is complex (radicand " +
                          std::to_string(radicand) + "); state is unphysical");
    }
    // 2 nu^2 = D - sqrt(D^2 - 4 delta), rationalized to avoid cancellation.
    const double root = std::sqrt(std::max(radicand, 0.0));
    const double denom = delta_tilde + root;
    if (!(denom > 0.0)) {
        throw DomainError("partially transposed spectrum is degenerate; state is unphysical");
    }
    return std::sqrt(2.0 * d.delta / denom);
}

double logarithmic_negativity(const TwoModeState& s) {
    return std::max(0.0, -std::log2(partially_transposed_nu_minus(s)));
}

double discord_min_conditional_determinant(const Determinants& d) {
    const double a = d.alpha;
    const double b = d.det_beta;
    const double g = d.det_gamma;
    const double dl = d.delta;

    // A pure measured mode can carry no correlations: the conditional state is sigma_1.
    if (b - 1.0 <= kNumericZero) {
        return a;
    }

    const auto first_branch = [&] {
        const double x = (b - 1.0) * (dl - a);
        const double rad = clamp_radicand(g * g + x, g * g + std::abs(x), "discord");
        const double root = (std::abs(g) + std::sqrt(rad)) / (b - 1.0);
        return root * root;
    };
    const auto second_branch = [&] {
        const double ab = a * b;
        const double rad_raw = g * g * g * g + (dl - ab) * (dl - ab) - 2.0 * g * g * (ab + dl);
        const double rad = clamp_radicand(rad_raw, g * g * g * g + (dl - ab) * (dl - ab) + 2.0 * g * g * (ab + dl),
                                          "discord");
        return (ab - g * g + dl - std::sqrt(rad)) / (2.0 * b);
    };

    // Both sides are fourth order in the cross correlations, so the boundary
    // tolerance has to be relative: an absolute one swamps weakly correlated states.
    const double lhs = (dl - a * b) * (dl - a * b);
    const double rhs = (1.0 + b) * g * g * (a + dl);
    const double tol = kNumericZero * std::max(lhs, rhs);

    double e = 0.0;
    if (lhs < rhs - tol) {
        e = first_branch();
    } else if (lhs > rhs + tol) {
        e = second_branch();
    } else {
        // On the boundary the branches agree analytically; fall back to the
        // other one only if the printed choice is not finite.
        const double e1 = first_branch();
        const double e2 = second_branch();
        const double preferred = lhs <= rhs ? e1 : e2;
        e = std::isfinite(preferred) ? preferred : (lhs <= rhs ? e2 : e1);
    }
    // The conditional state is physical, so e >= 1. Pure states sit on the branch
    // boundary with both radicands vanishing, where sqrt turns roundoff into ~1e-8.
    if (e < 1.0 - kConditionalSlack) {
        throw NumericalError("minimized conditional determinant is below 1: " + std::to_string(e));
    }
    return std::max(e, 1.0);
}

double gaussian_discord(const TwoModeState& s, MeasuredMode measured) {
    const TwoModeState oriented = measured == MeasuredMode::second ? s : swapped(s);
    const auto d = Determinants::of(oriented);
    const auto nu = symplectic_eigenvalues(oriented.covariance());
    const double e = discord_min_conditional_determinant(d);
    return entropy_f(std::sqrt(d.det_beta)) - entropy_f(nu[0]) - entropy_f(nu[1]) + entropy_f(std::sqrt(e));
}

CorrelationReport correlation_report(const TwoModeState& s, SweepPoint coords) {
    CorrelationReport rep;
    rep.t = coords.t;
    rep.r = coords.r;
    rep.temperature = coords.temperature;

    const auto nu = symplectic_eigenvalues(s.covariance());
    rep.nu1 = nu[0];
    rep.nu2 = nu[1];
    rep.determinants = Determinants::of(s);
    rep.nu_tilde_minus = partially_transposed_nu_minus(s);
    rep.log_negativity = std::max(0.0, -std::log2(rep.nu_tilde_minus));
    rep.mutual_information = mutual_information(s);
    rep.discord = gaussian_discord(s);

    const double scale = std::max(1.0, s.matrix().cwiseAbs().maxCoeff());
    if (s.exchange_asymmetry() <= 1e-8 * scale) {
        const auto pm = beam_split(s);
        rep.nu_plus = pm.nu_plus;
        rep.nu_minus = pm.nu_minus;
    } else {
        rep.nu_plus = std::numeric_limits<double>::quiet_NaN();
        rep.nu_minus = std::numeric_limits<double>::quiet_NaN();
    }
    return rep;
}

}  // namespace cavharvest
