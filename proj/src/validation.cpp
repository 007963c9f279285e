#include "cavharvest/validation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cavharvest/cavity.hpp"
#include "cavharvest/correlations.hpp"
#include "cavharvest/decomposition.hpp"
#include "cavharvest/evolution.hpp"
#include "cavharvest/gaussian.hpp"

namespace cavharvest {

namespace {

std::string sci(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

double report_distance(const CorrelationReport& a, const CorrelationReport& b) {
    return std::max({std::abs(a.log_negativity - b.log_negativity),
                     std::abs(a.mutual_information - b.mutual_information), std::abs(a.discord - b.discord),
                     std::abs(a.nu1 - b.nu1), std::abs(a.nu2 - b.nu2), std::abs(a.nu_plus - b.nu_plus),
                     std::abs(a.nu_minus - b.nu_minus)});
}

}  // namespace

double symplectic_defect_inf_norm(const Eigen::MatrixXd& S) {
    const Eigen::MatrixXd omega = symplectic_form(static_cast<std::size_t>(S.rows() / 2));
    return (S * omega * S.transpose() - omega).cwiseAbs().rowwise().sum().maxCoeff();
}

std::vector<CheckResult> run_validation_suite(const std::function<void(const CheckResult&)>& progress) {
    std::vector<CheckResult> out;
    const auto record = [&](std::string name, bool passed, std::string detail) {
        out.push_back({std::move(name), passed, std::move(detail)});
        if (progress) {
            progress(out.back());
        }
    };

    const CavityConfig ref = CavityConfig::reference(4.0);
    const auto gen = PropagatorGenerator::build(ref);
    const double recon = gen.reconstruction_residual();
    record("eigendecomposition reconstructs the generator", recon < 1e-10, "residual " + sci(recon));

    const auto vacuum = initial_state(ref, FieldTemperature(0.0));
    double worst_sym = 0.0;
    double worst_purity = 0.0;
    for (double t : {0.5, 1.0, 2.0, 5.0, 10.0, 50.0}) {
        const Eigen::MatrixXd s = gen.propagator(t);
        worst_sym = std::max(worst_sym, symplectic_defect_inf_norm(s));
        for (double nu : symplectic_eigenvalues(evolve(vacuum, s))) {
            worst_purity = std::max(worst_purity, std::abs(nu - 1.0));
        }
    }
    record("S(t) is symplectic for t in {0.5, 1, 2, 5, 10, 50}", worst_sym < 1e-9, "max defect " + sci(worst_sym));
    record("vacuum evolution stays pure (all nu = 1)", worst_purity < 1e-6, "max |nu - 1| " + sci(worst_purity));

    CavityConfig small = ref;
    small.n_modes = 10;
    const auto small_gen = PropagatorGenerator::build(small);
    double worst_oracle = 0.0;
    for (double t : {0.5, 2.0, 10.0}) {
        const Eigen::MatrixXd diff = small_gen.propagator(t) - integrate_propagator(small, t, 1e-4);
        worst_oracle = std::max(worst_oracle, diff.cwiseAbs().maxCoeff());
    }
    record("spectral propagator matches RK4 (N = 10, dt = 1e-4)", worst_oracle < 1e-6,
           "max deviation " + sci(worst_oracle));

    const Eigen::MatrixXd composed = small_gen.propagator(1.3) * small_gen.propagator(2.4);
    const double group = (composed - small_gen.propagator(3.7)).cwiseAbs().maxCoeff();
    const double inverse =
        (small_gen.propagator(2.0) * small_gen.propagator(-2.0) - Eigen::MatrixXd::Identity(composed.rows(), composed.cols()))
            .cwiseAbs()
            .maxCoeff();
    record("S(a) S(b) = S(a + b) and S(t) S(-t) = I", group < 1e-9 && inverse < 1e-9,
           "defects " + sci(group) + ", " + sci(inverse));

    const Eigen::MatrixXd rows = gen.detector_rows(2.0);
    double worst_asym = 0.0;
    double worst_block = 0.0;
    double worst_match = 0.0;
    for (double temp : {0.0, 1.0, 10.0}) {
        const auto state = detector_state(rows, initial_state_diagonal(ref, FieldTemperature(temp)));
        worst_asym = std::max(worst_asym, state.exchange_asymmetry());
        const auto pm = beam_split(state);
        worst_block = std::max(worst_block, pm.off_block_residual);
        const auto nu = symplectic_eigenvalues(state.covariance());
        const double lo = std::min(pm.nu_minus, pm.nu_plus);
        const double hi = std::max(pm.nu_minus, pm.nu_plus);
        worst_match = std::max({worst_match, std::abs(lo - nu[0]), std::abs(hi - nu[1])});
    }
    record("detectors stay exchange symmetric (r = 4, t = 2)", worst_asym < 1e-8, "max asymmetry " + sci(worst_asym));
    record("(+)/(-) modes stay uncoupled and carry nu1, nu2", worst_block < 1e-8 && worst_match < 1e-9,
           "off-block " + sci(worst_block) + ", eigenvalue mismatch " + sci(worst_match));

    CavityConfig shifted = ref;
    shifted.x1 = 30.0;
    shifted.x2 = 34.0;
    const auto shifted_gen = PropagatorGenerator::build(shifted);
    const auto a = correlation_report(
        detector_state(rows, initial_state_diagonal(ref, FieldTemperature(1.0))), {2.0, 4.0, 1.0});
    const auto b = correlation_report(
        detector_state(shifted_gen.detector_rows(2.0), initial_state_diagonal(shifted, FieldTemperature(1.0))),
        {2.0, 4.0, 1.0});
    const double shift = report_distance(a, b);
    record("translating both detectors leaves every measure unchanged", shift < 1e-8, "max change " + sci(shift));

    return out;
}

}  // namespace cavharvest
