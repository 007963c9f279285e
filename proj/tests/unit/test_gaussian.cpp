#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "cavharvest/errors.hpp"
#include "cavharvest/gaussian.hpp"
#include "support.hpp"

using namespace cavharvest;

TEST_CASE("symplectic form is interleaved and squares to -1") {
    const Eigen::MatrixXd om = symplectic_form(3);
    CHECK(om.rows() == 6);
    CHECK(om(0, 1) == 1.0);
    CHECK(om(1, 0) == -1.0);
    CHECK(om(0, 2) == 0.0);
    CHECK((om * om + Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((om + om.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("cavity layout maps modes to mode numbers") {
    const auto layout = PhaseSpaceLayout::cavity(3);
    CHECK(layout.n_modes == 8);
    CHECK(layout.dimension() == 16);
    CHECK(layout.field_mode_number(2) == -3);
    CHECK(layout.field_mode_number(4) == -1);
    CHECK(layout.field_mode_number(5) == 1);
    CHECK(layout.field_mode_number(7) == 3);
    CHECK_THROWS_AS(layout.field_mode_number(1), ValidationError);
    CHECK_THROWS_AS(layout.field_mode_number(8), ValidationError);
}

TEST_CASE("covariance matrix construction rejects malformed input") {
    CHECK_THROWS_AS(CovarianceMatrix(Eigen::MatrixXd::Identity(3, 3)), DimensionError);
    CHECK_THROWS_AS(CovarianceMatrix(Eigen::MatrixXd::Identity(2, 4)), DimensionError);
    Eigen::MatrixXd asym = Eigen::MatrixXd::Identity(2, 2);
    asym(0, 1) = 0.1;
    CHECK_THROWS_AS(CovarianceMatrix{asym}, ValidationError);
    Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(2, 2);
    bad(0, 0) = std::nan("");
    CHECK_THROWS_AS(CovarianceMatrix{bad}, ValidationError);
    CHECK_THROWS_AS(CovarianceMatrix(Eigen::MatrixXd::Identity(4, 4), PhaseSpaceLayout::cavity(1)), DimensionError);
}

TEST_CASE("vacuum and thermal spectra") {
    CHECK(symplectic_eigenvalues(CovarianceMatrix(Eigen::MatrixXd::Identity(4, 4))) == std::vector<double>{1.0, 1.0});
    Eigen::MatrixXd th = Eigen::MatrixXd::Identity(4, 4);
    th(2, 2) = th(3, 3) = 3.0;
    const auto nu = symplectic_eigenvalues(CovarianceMatrix(th));
    CHECK(nu[0] == doctest::Approx(1.0));
    CHECK(nu[1] == doctest::Approx(3.0));
    CHECK(CovarianceMatrix(th).is_physical());

    Eigen::MatrixXd sub = Eigen::MatrixXd::Identity(2, 2) * 0.5;
    CHECK_FALSE(CovarianceMatrix(sub).is_physical());
}

TEST_CASE("symplectic spectrum agrees with the Williamson oracle") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> nu(1.0, 4.0);
    for (std::size_t modes = 1; modes <= 4; ++modes) {
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<double> spec(modes);
            for (auto& v : spec) {
                v = nu(rng);
            }
            std::sort(spec.begin(), spec.end());
            const auto sigma = testsupport::random_state(spec, rng);
            const auto ours = symplectic_eigenvalues(sigma);
            const auto oracle = testsupport::williamson_spectrum(sigma.matrix());
            REQUIRE(ours.size() == modes);
            REQUIRE(oracle.size() == modes);
            for (std::size_t k = 0; k < modes; ++k) {
                CHECK(ours[k] == doctest::Approx(oracle[k]).epsilon(1e-9));
                CHECK(ours[k] == doctest::Approx(spec[k]).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("symplectic spectrum is invariant under symplectic conjugation") {
    std::mt19937_64 rng(11);
    const auto sigma = testsupport::random_state({1.2, 1.7, 2.9}, rng);
    const auto base = symplectic_eigenvalues(sigma);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::MatrixXd s = testsupport::random_symplectic(3, rng);
        CHECK(symplectic_residual(s) < 1e-10);
        Eigen::MatrixXd moved = s * sigma.matrix() * s.transpose();
        moved = 0.5 * (moved + moved.transpose()).eval();
        const auto nu = symplectic_eigenvalues(CovarianceMatrix(moved));
        for (std::size_t k = 0; k < base.size(); ++k) {
            CHECK(nu[k] == doctest::Approx(base[k]).epsilon(1e-9));
        }
    }
}

TEST_CASE("symplectic residual and checks") {
    Eigen::MatrixXd sq = Eigen::MatrixXd::Identity(2, 2);
    sq(0, 0) = 2.0;
    sq(1, 1) = 0.5;
    CHECK(symplectic_residual(sq) < 1e-15);
    CHECK(is_symplectic(sq, 1e-12));
    sq(1, 1) = 0.6;
    CHECK_FALSE(is_symplectic(sq, 1e-12));
    CHECK_THROWS_AS(symplectic_residual(Eigen::MatrixXd::Identity(3, 3)), DimensionError);
    CHECK_THROWS_AS(symplectic_residual(Eigen::MatrixXd::Identity(2, 4)), DimensionError);
}

TEST_CASE("entropy function") {
    CHECK(entropy_f(1.0) == 0.0);
    CHECK(entropy_f(3.0) == doctest::Approx(2.0));
    CHECK(entropy_f(1.0 - 5e-10) == 0.0);
    CHECK_THROWS_AS(entropy_f(0.99), DomainError);
    CHECK_THROWS_AS(entropy_f(std::nan("")), DomainError);
    // log2 convention: a thermal mode with nbar = 1 (nu = 3) has 2 bits.
    CHECK(entropy_f(5.0) == doctest::Approx(3.0 * std::log2(3.0) - 2.0 * std::log2(2.0)));
}

TEST_CASE("von Neumann entropy of a product state adds up") {
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(4, 4);
    m(0, 0) = m(1, 1) = 3.0;
    m(2, 2) = m(3, 3) = 5.0;
    CHECK(von_neumann_entropy(CovarianceMatrix(m)) == doctest::Approx(entropy_f(3.0) + entropy_f(5.0)));
}

TEST_CASE("partial state extracts modes in order") {
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(6, 6);
    for (int i = 0; i < 6; ++i) {
        m(i, i) = 1.0 + i;
    }
    m(0, 4) = m(4, 0) = 0.5;
    const std::array<std::size_t, 2> pick{2, 0};
    const auto part = partial_state(CovarianceMatrix(m), pick);
    CHECK(part.dimension() == 4);
    CHECK(part.matrix()(0, 0) == 5.0);
    CHECK(part.matrix()(2, 2) == 1.0);
    CHECK(part.matrix()(0, 2) == 0.5);

    const std::array<std::size_t, 2> repeated{1, 1};
    const std::array<std::size_t, 1> out_of_range{3};
    CHECK_THROWS_AS(partial_state(CovarianceMatrix(m), repeated), ValidationError);
    CHECK_THROWS_AS(partial_state(CovarianceMatrix(m), out_of_range), ValidationError);
}
