#pragma once

#include "cavharvest/evolution.hpp"

namespace cavharvest {

/// The four determinants a two-mode Gaussian state's invariants are built from.
/// Named det_* so they cannot be confused with inverse temperature.
struct Determinants {
    double alpha;      // det sigma_1
    double det_beta;   // det sigma_2
    double det_gamma;  // det gamma_12
    double delta;      // det sigma^(d)

    static Determinants of(const TwoModeState& s);
};

/// Threshold below which radicands and minimized determinants are treated as
/// roundoff around zero (relative to the magnitude of the terms involved).
inline constexpr double kNumericZero = 1e-12;

/// Allowed shortfall of the minimized conditional determinant below 1.
inline constexpr double kConditionalSlack = 1e-6;

/// I = S(sigma_1) + S(sigma_2) - S(sigma^(d)), in bits.
double mutual_information(const TwoModeState& s);

/// Smaller symplectic eigenvalue of the partial transpose.
/// Throws DomainError if Delta~^2 < 4 delta beyond roundoff.
double partially_transposed_nu_minus(const TwoModeState& s);

/// E_N = max(0, -log2 nu~_-).
double logarithmic_negativity(const TwoModeState& s);

/// Which subsystem the Gaussian measurement acts on.
enum class MeasuredMode { second, first };

/// Minimal conditional determinant E over Gaussian measurements on the
/// measured mode (closed form, two branches). Never below 1.
double discord_min_conditional_determinant(const Determinants& d);

/// Gaussian discord D(1:2) (measurement on detector 2) by default.
double gaussian_discord(const TwoModeState& s, MeasuredMode measured = MeasuredMode::second);

struct SweepPoint {
    double t = 0.0;
    double r = 0.0;
    double temperature = 0.0;
};

struct CorrelationReport {
    double t = 0.0;
    double r = 0.0;
    double temperature = 0.0;
    double log_negativity = 0.0;
    double mutual_information = 0.0;
    double discord = 0.0;
    double nu1 = 1.0;  // ascending symplectic eigenvalues of sigma^(d)
    double nu2 = 1.0;
    double nu_tilde_minus = 1.0;
    double nu_plus = 1.0;   // NaN when the state is not exchange symmetric
    double nu_minus = 1.0;
    Determinants determinants{1.0, 1.0, 0.0, 1.0};
};

CorrelationReport correlation_report(const TwoModeState& s, SweepPoint coords);

}  // namespace cavharvest
