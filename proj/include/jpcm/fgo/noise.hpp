#pragma once

#include <Eigen/Core>

namespace jpcm::fgo {

// Gaussian noise model; whitening multiplies residuals/Jacobians by Σ^{-1/2}.
// Diagonal models keep a fast path since every factor here uses one.
class NoiseModel {
 public:
  static NoiseModel from_sigmas(const Eigen::VectorXd& sigmas);
  static NoiseModel from_variances(const Eigen::VectorXd& variances);
  static NoiseModel isotropic(int dim, double sigma);
  static NoiseModel from_covariance(const Eigen::MatrixXd& cov);

  int dim() const { return static_cast<int>(inv_sigma_.size() ? inv_sigma_.size() : sqrt_info_.rows()); }
  bool diagonal() const { return inv_sigma_.size() > 0; }

  Eigen::VectorXd whiten(const Eigen::VectorXd& r) const;
  Eigen::MatrixXd whiten_jacobian(const Eigen::MatrixXd& J) const;

 private:
  NoiseModel() = default;
  Eigen::VectorXd inv_sigma_;   // set for diagonal models
  Eigen::MatrixXd sqrt_info_;   // set for dense models
};

}  // namespace jpcm::fgo
