#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cavharvest/cavity.hpp"
#include "cavharvest/errors.hpp"

using namespace cavharvest;

TEST_CASE("reference cavity parameters") {
    const auto cfg = CavityConfig::reference(4.0);
    CHECK(cfg.length == 100.0);
    CHECK(cfg.n_modes == 80);
    CHECK(cfg.coupling == 0.05);
    CHECK(cfg.detector_frequency == doctest::Approx(40.0 * std::numbers::pi / 100.0));
    CHECK(cfg.x1 == 0.0);
    CHECK(cfg.x2 == 4.0);
    CHECK(cfg.dimension() == 324);
    CHECK(cfg.at_separation(7.0).x2 == 7.0);
    CHECK(cfg.at_separation(7.0).x1 == 0.0);
}

TEST_CASE("config validation") {
    auto cfg = CavityConfig::reference();
    cfg.length = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg = CavityConfig::reference();
    cfg.n_modes = 0;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg = CavityConfig::reference();
    cfg.detector_frequency = -1.0;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg = CavityConfig::reference();
    cfg.coupling = -0.1;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg = CavityConfig::reference();
    cfg.x2 = std::nan("");
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg = CavityConfig::reference();
    cfg.coupling = 0.0;
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("temperatures must be non-negative") {
    CHECK_THROWS_AS(FieldTemperature(-0.1), ValidationError);
    CHECK_THROWS_AS(FieldTemperature(std::nan("")), ValidationError);
    CHECK(FieldTemperature(0.0).is_vacuum());
    CHECK_FALSE(FieldTemperature(0.5).is_vacuum());
}

TEST_CASE("mode table skips the zero mode and lists n = -N..N") {
    CavityConfig cfg = CavityConfig::reference();
    cfg.n_modes = 3;
    const auto modes = mode_table(cfg);
    REQUIRE(modes.size() == 6);
    CHECK(modes.front().n == -3);
    CHECK(modes[2].n == -1);
    CHECK(modes[3].n == 1);
    CHECK(modes.back().n == 3);
    for (const auto& m : modes) {
        CHECK(m.k == doctest::Approx(2.0 * std::numbers::pi * m.n / 100.0));
        CHECK(m.omega == doctest::Approx(std::abs(m.k)));
        CHECK(m.omega > 0.0);
    }
}

TEST_CASE("thermal symplectic eigenvalue is coth(omega / 2T)") {
    CHECK(thermal_symplectic_eigenvalue(0.7, FieldTemperature(0.0)) == 1.0);
    for (double omega : {0.01, 0.3, 2.0}) {
        for (double temp : {0.1, 1.0, 60.0}) {
            CHECK(thermal_symplectic_eigenvalue(omega, FieldTemperature(temp)) ==
                  doctest::Approx(1.0 / std::tanh(omega / (2.0 * temp))).epsilon(1e-12));
        }
    }
    // Deep in the quantum regime the occupation underflows cleanly.
    CHECK(thermal_symplectic_eigenvalue(50.0, FieldTemperature(0.01)) == 1.0);
}

TEST_CASE("free Hamiltonian is diagonal with detector and mode frequencies") {
    CavityConfig cfg = CavityConfig::reference();
    cfg.n_modes = 2;
    const Eigen::MatrixXd f = free_hamiltonian_matrix(cfg);
    CHECK(f.rows() == 12);
    for (int i = 0; i < 4; ++i) {
        CHECK(f(i, i) == cfg.detector_frequency);
    }
    const double w1 = 2.0 * std::numbers::pi / 100.0;
    CHECK(f(4, 4) == doctest::Approx(2.0 * w1));  // n = -2
    CHECK(f(7, 7) == doctest::Approx(w1));        // n = -1
    CHECK(f(8, 8) == doctest::Approx(w1));        // n = +1
    CHECK((f - Eigen::MatrixXd(f.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("interaction couples detector positions to the field only") {
    CavityConfig cfg = CavityConfig::reference(3.0);
    cfg.n_modes = 4;
    const Eigen::MatrixXd f = interaction_matrix(cfg);
    CHECK((f - f.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(f.topLeftCorner(4, 4).cwiseAbs().maxCoeff() == 0.0);
    CHECK(f.bottomRightCorner(8, 8).cwiseAbs().maxCoeff() == 0.0);
    CHECK(f.row(1).cwiseAbs().maxCoeff() == 0.0);
    CHECK(f.row(3).cwiseAbs().maxCoeff() == 0.0);

    const auto modes = mode_table(cfg);
    for (std::size_t j = 0; j < modes.size(); ++j) {
        const auto c = static_cast<Eigen::Index>(4 + 2 * j);
        const double norm = 2.0 * cfg.coupling / std::sqrt(4.0 * std::numbers::pi * std::abs(modes[j].n));
        CHECK(f(0, c) == doctest::Approx(norm));  // x1 = 0
        CHECK(f(0, c + 1) == doctest::Approx(0.0));
        CHECK(f(2, c) == doctest::Approx(norm * std::cos(modes[j].k * 3.0)));
        CHECK(f(2, c + 1) == doctest::Approx(-norm * std::sin(modes[j].k * 3.0)));
    }
    cfg.coupling = 0.0;
    CHECK(interaction_matrix(cfg).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("initial state is vacuum detectors times a thermal field") {
    CavityConfig cfg = CavityConfig::reference();
    cfg.n_modes = 3;
    const auto vac = initial_state(cfg, FieldTemperature(0.0));
    CHECK((vac.matrix() - Eigen::MatrixXd::Identity(16, 16)).cwiseAbs().maxCoeff() == 0.0);
    CHECK(vac.layout() == cfg.layout());

    const auto hot = initial_state_diagonal(cfg, FieldTemperature(2.0));
    for (int i = 0; i < 4; ++i) {
        CHECK(hot[i] == 1.0);
    }
    const auto modes = mode_table(cfg);
    for (std::size_t j = 0; j < modes.size(); ++j) {
        const double nu = 1.0 / std::tanh(modes[j].omega / 4.0);
        CHECK(hot[static_cast<Eigen::Index>(4 + 2 * j)] == doctest::Approx(nu));
        CHECK(hot[static_cast<Eigen::Index>(5 + 2 * j)] == doctest::Approx(nu));
    }
    CHECK(thermal_field_state(cfg, FieldTemperature(2.0)).dimension() == 12);
}

TEST_CASE("cavity correlation function") {
    CavityConfig cfg = CavityConfig::reference();
    // At r = L/2 every cosine is (-1)^n.
    long double expect = 0.0L;
    for (int n = 1; n <= 80; ++n) {
        const long double w = 2.0L * std::numbers::pi_v<long double> * n / 100.0L;
        expect += (n % 2 == 0 ? 1.0L : -1.0L) / w;
    }
    expect /= 100.0L;
    CHECK(cavity_correlation_function(50.0, FieldTemperature(0.0), cfg) ==
          doctest::Approx(static_cast<double>(expect)).epsilon(1e-12));

    // Heating raises every term at r = 0.
    CHECK(cavity_correlation_function(0.0, FieldTemperature(1.0), cfg) >
          cavity_correlation_function(0.0, FieldTemperature(0.0), cfg));
    // Translational invariance means C depends on r only through cos(omega r): symmetric about L/2.
    CHECK(cavity_correlation_function(21.0, FieldTemperature(10.0), cfg) ==
          doctest::Approx(cavity_correlation_function(79.0, FieldTemperature(10.0), cfg)).epsilon(1e-10));
    CHECK_THROWS_AS(cavity_correlation_function(-1.0, FieldTemperature(0.0), cfg), DomainError);
}

TEST_CASE("free-space thermal correlation") {
    CHECK(free_space_correlation(10.0, 5.0) == doctest::Approx(5.0 / (40.0 * std::numbers::pi)).epsilon(1e-12));
    CHECK(free_space_correlation(0.01, 0.1) ==
          doctest::Approx(0.1 / (4.0 * std::numbers::pi * 0.01) / std::tanh(std::numbers::pi * 0.001)));
    CHECK_THROWS_AS(free_space_correlation(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(free_space_correlation(1.0, 0.0), DomainError);
}
