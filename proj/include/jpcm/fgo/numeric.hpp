#pragma once

#include "jpcm/fgo/factor.hpp"

namespace jpcm::fgo {

// Central finite-difference Jacobians of a factor's (unwhitened) residual,
// probing through each variable's retraction. Independent of the factors'
// analytic code paths; serves as the oracle they are tested against.
std::vector<Eigen::MatrixXd> numerical_jacobians(const Factor& factor,
                                                 const Values& values,
                                                 double eps = 1e-6);

// Largest relative deviation between analytic and numerical blocks, the
// metric the jacobian checks report: |Δ|/max(1, ‖analytic‖∞).
double max_jacobian_error(const Factor& factor, const Values& values,
                          double eps = 1e-6);

}  // namespace jpcm::fgo
