#include "cavharvest/cavity.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "cavharvest/errors.hpp"

namespace cavharvest {

void CavityConfig::validate() const {
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw ValidationError("cavity length must be positive, got " + std::to_string(length));
    }
    if (n_modes < 1) {
        throw ValidationError("n_modes must be at least 1, got " + std::to_string(n_modes));
    }
    if (!(detector_frequency > 0.0) || !std::isfinite(detector_frequency)) {
        throw ValidationError("detector frequency must be positive, got " +
                              std::to_string(detector_frequency));
    }
    if (!(coupling >= 0.0) || !std::isfinite(coupling)) {
        throw ValidationError("coupling must be non-negative, got " + std::to_string(coupling));
    }
    if (!std::isfinite(x1) || !std::isfinite(x2)) {
        throw ValidationError("detector positions must be finite");
    }
}

CavityConfig CavityConfig::at_separation(double r) const {
    CavityConfig out = *this;
    out.x1 = 0.0;
    out.x2 = r;
    return out;
}

CavityConfig CavityConfig::reference(double separation) {
    CavityConfig cfg;
    cfg.length = 100.0;
    cfg.n_modes = 80;
    cfg.detector_frequency = 40.0 * std::numbers::pi / cfg.length;
    cfg.coupling = 0.05;
    cfg.x1 = 0.0;
    cfg.x2 = separation;
    return cfg;
}

std::string CavityConfig::describe() const {
    std::ostringstream os;
    os.precision(17);
    os << "{L=" << length << ", N=" << n_modes << ", Omega=" << detector_frequency
       << ", lambda=" << coupling << ", x1=" << x1 << ", x2=" << x2 << "}";
    return os.str();
}

FieldTemperature::FieldTemperature(double value) : value_(value) {
    if (!(value >= 0.0) || !std::isfinite(value)) {
        throw ValidationError("temperature must be finite and non-negative, got " +
                              std::to_string(value));
    }
}

std::vector<FieldMode> mode_table(const CavityConfig& cfg) {
    cfg.validate();
    std::vector<FieldMode> modes;
    modes.reserve(static_cast<std::size_t>(2 * cfg.n_modes));
    for (int n = -cfg.n_modes; n <= cfg.n_modes; ++n) {
        if (n == 0) {
            continue;
        }
        const double k = 2.0 * std::numbers::pi * n / cfg.length;
        modes.push_back({n, k, std::abs(k)});
    }
    return modes;
}

double thermal_symplectic_eigenvalue(double omega, FieldTemperature temperature) {
    if (temperature.is_vacuum()) {
        return 1.0;
    }
    // coth(x/2) = 1 + 2/(e^x - 1); expm1 keeps precision for x << 1.
    const double x = omega / temperature.value();
    return 1.0 + 2.0 / std::expm1(x);
}

Eigen::MatrixXd free_hamiltonian_matrix(const CavityConfig& cfg) {
    const auto modes = mode_table(cfg);
    const auto dim = static_cast<Eigen::Index>(cfg.dimension());
    Eigen::VectorXd diag(dim);
    diag.head<4>().setConstant(cfg.detector_frequency);
    Eigen::Index i = 4;
    for (const auto& mode : modes) {
        diag[i++] = mode.omega;
        diag[i++] = mode.omega;
    }
    return diag.asDiagonal();
}

Eigen::MatrixXd interaction_matrix(const CavityConfig& cfg) {
    const auto modes = mode_table(cfg);
    const auto dim = static_cast<Eigen::Index>(cfg.dimension());
    const auto field_dim = dim - 4;

    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(4, field_dim);
    for (std::size_t j = 0; j < modes.size(); ++j) {
        const auto& mode = modes[j];
        const double norm = 1.0 / std::sqrt(4.0 * std::numbers::pi * std::abs(mode.n));
        const auto col = static_cast<Eigen::Index>(2 * j);
        x(0, col) = std::cos(mode.k * cfg.x1) * norm;
        x(0, col + 1) = -std::sin(mode.k * cfg.x1) * norm;
        x(2, col) = std::cos(mode.k * cfg.x2) * norm;
        x(2, col + 1) = -std::sin(mode.k * cfg.x2) * norm;
    }

    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(dim, dim);
    f.topRightCorner(4, field_dim) = 2.0 * cfg.coupling * x;
    f.bottomLeftCorner(field_dim, 4) = 2.0 * cfg.coupling * x.transpose();
    return f;
}

Eigen::VectorXd initial_state_diagonal(const CavityConfig& cfg, FieldTemperature temperature) {
    const auto modes = mode_table(cfg);
    Eigen::VectorXd diag = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(cfg.dimension()));
    if (temperature.is_vacuum()) {
        return diag;
    }
    Eigen::Index i = 4;
    for (const auto& mode : modes) {
        const double nu = thermal_symplectic_eigenvalue(mode.omega, temperature);
        diag[i++] = nu;
        diag[i++] = nu;
    }
    return diag;
}

CovarianceMatrix thermal_field_state(const CavityConfig& cfg, FieldTemperature temperature) {
    const Eigen::VectorXd full = initial_state_diagonal(cfg, temperature);
    const Eigen::VectorXd field = full.tail(full.size() - 4);
    PhaseSpaceLayout layout = PhaseSpaceLayout::generic(static_cast<std::size_t>(field.size() / 2));
    return CovarianceMatrix(Eigen::MatrixXd(field.asDiagonal()), layout);
}

CovarianceMatrix initial_state(const CavityConfig& cfg, FieldTemperature temperature) {
    const Eigen::VectorXd diag = initial_state_diagonal(cfg, temperature);
    return CovarianceMatrix(Eigen::MatrixXd(diag.asDiagonal()), cfg.layout());
}

double cavity_correlation_function(double r, FieldTemperature temperature, const CavityConfig& cfg) {
    cfg.validate();
    if (!(r >= 0.0)) {
        throw DomainError("correlation distance must be non-negative, got " + std::to_string(r));
    }
    double sum = 0.0;
    for (int n = 1; n <= cfg.n_modes; ++n) {
        const double omega = 2.0 * std::numbers::pi * n / cfg.length;
        sum += thermal_symplectic_eigenvalue(omega, temperature) / omega * std::cos(omega * r);
    }
    return sum / cfg.length;
}

double free_space_correlation(double r, double temperature) {
    if (!(r > 0.0) || !(temperature > 0.0)) {
        throw DomainError("free-space correlation needs r > 0 and T > 0");
    }
    return temperature / (4.0 * std::numbers::pi * r) / std::tanh(std::numbers::pi * temperature * r);
}

}  // namespace cavharvest
