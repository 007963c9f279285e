#pragma once

// (+)/(-) mode analysis of exchange-symmetric detector states. A fixed 50:50
// beam splitter maps the detector pair onto two uncorrelated modes, each
// coupled to the field with mode-dependent strength.

#include <vector>

#include <Eigen/Dense>

#include "cavharvest/cavity.hpp"
#include "cavharvest/evolution.hpp"

namespace cavharvest {

/// (1/sqrt 2) [[-I, I], [I, I]]; symmetric, orthogonal, its own inverse.
Eigen::Matrix4d beam_splitter_matrix();

struct PlusMinusDecomposition {
    Eigen::Matrix2d sigma_minus;
    Eigen::Matrix2d sigma_plus;
    double nu_minus = 1.0;
    double nu_plus = 1.0;
    /// max |off-diagonal 2x2 block| of S sigma S^T.
    double off_block_residual = 0.0;
};

/// Transforms the detector state with the beam splitter; (-) mode first.
/// Throws ValidationError for states that are not exchange symmetric to 1e-8
/// (relative to the largest entry), DomainError if sigma_+- is unphysical.
PlusMinusDecomposition beam_split(const TwoModeState& state);

/// Inverse relations: sigma_1 = sigma_2 = (sigma_+ + sigma_-)/2,
/// gamma_12 = (sigma_+ - sigma_-)/2.
TwoModeState reassemble(const PlusMinusDecomposition& d);

struct ModeCoupling {
    int n;
    double omega;
    double c_plus;   // sqrt2 |cos(k r / 2)|
    double c_minus;  // sqrt2 |sin(k r / 2)|
};

/// Magnitudes of the (+)/(-) mode functions for every field mode, in layout
/// order. The common phase e^{i k (x1 + x2)/2} is dropped.
std::vector<ModeCoupling> mode_function_couplings(double r, const CavityConfig& cfg);

/// 2 f((nu1 + nu2)/2) - f(nu1) - f(nu2): mutual information when sigma_+- are
/// exactly thermal.
double thermal_approx_mutual_information(double nu1, double nu2);

struct PassiveEntanglementVerdict {
    bool entangling_possible;
    double eigenvalue_product;  // product of the two smallest ordinary eigenvalues
};

/// A passive operation can entangle sigma_- (+) sigma_+ iff the two smallest
/// ordinary eigenvalues multiply to less than 1.
PassiveEntanglementVerdict passive_entanglement_criterion(const PlusMinusDecomposition& d);

}  // namespace cavharvest
