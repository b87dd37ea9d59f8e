#include "jpcm/fgo/noise.hpp"

#include <Eigen/Cholesky>
#include <stdexcept>

namespace jpcm::fgo {

NoiseModel NoiseModel::from_sigmas(const Eigen::VectorXd& sigmas) {
  if (sigmas.size() == 0 || (sigmas.array() <= 0.0).any()) {
    throw std::invalid_argument("NoiseModel: sigmas must be positive");
  }
  NoiseModel m;
  m.inv_sigma_ = sigmas.cwiseInverse();
  return m;
}

NoiseModel NoiseModel::from_variances(const Eigen::VectorXd& variances) {
  return from_sigmas(variances.cwiseSqrt());
}

NoiseModel NoiseModel::isotropic(int dim, double sigma) {
  return from_sigmas(Eigen::VectorXd::Constant(dim, sigma));
}

NoiseModel NoiseModel::from_covariance(const Eigen::MatrixXd& cov) {
  if (cov.rows() != cov.cols() || cov.rows() == 0) {
    throw std::invalid_argument("NoiseModel: covariance must be square");
  }
  if (cov.isDiagonal(1e-15)) {
    return from_variances(cov.diagonal());
  }
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("NoiseModel: covariance not positive definite");
  }
  NoiseModel m;
  // Σ = LLᵀ ⇒ Σ^{-1/2} = L⁻¹ (any square root works for least squares).
  m.sqrt_info_ = Eigen::MatrixXd(llt.matrixL())
                     .triangularView<Eigen::Lower>()
                     .solve(Eigen::MatrixXd::Identity(cov.rows(), cov.cols()));
  return m;
}

Eigen::VectorXd NoiseModel::whiten(const Eigen::VectorXd& r) const {
  if (r.size() != dim()) {
    throw std::invalid_argument("NoiseModel: residual dimension mismatch");
  }
  if (diagonal()) return inv_sigma_.cwiseProduct(r);
  return sqrt_info_ * r;
}

Eigen::MatrixXd NoiseModel::whiten_jacobian(const Eigen::MatrixXd& J) const {
  if (J.rows() != dim()) {
    throw std::invalid_argument("NoiseModel: jacobian row mismatch");
  }
  if (diagonal()) return inv_sigma_.asDiagonal() * J;
  return sqrt_info_ * J;
}

}  // namespace jpcm::fgo
