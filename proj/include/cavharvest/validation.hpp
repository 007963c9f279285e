#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cavharvest {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Induced infinity norm of S Omega S^T - Omega (largest absolute row sum).
double symplectic_defect_inf_norm(const Eigen::MatrixXd& S);

/// Invariant suite behind the `validate` subcommand: symplecticity and purity
/// on the reference cavity, spectral vs RK4 propagators on a small cavity,
/// the group property, exchange symmetry, (+)/(-) decoupling and translation
/// invariance. `progress` is called after each check.
std::vector<CheckResult> run_validation_suite(const std::function<void(const CheckResult&)>& progress = {});

}  // namespace cavharvest
