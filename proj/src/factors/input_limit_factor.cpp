#include "jpcm/factors/input_limit_factor.hpp"

#include <stdexcept>

namespace jpcm {

InputLimitFactor::InputLimitFactor(fgo::Key key, InputLimits limits)
    : Factor({key}, fgo::NoiseModel::isotropic(4, limits.sigma)),
      lim_(limits) {
  if (!(lim_.lower_band() < lim_.upper_band())) {
    throw std::invalid_argument("InputLimitFactor: bands overlap");
  }
}

Eigen::VectorXd InputLimitFactor::error(const fgo::Values& v) const {
  const Eigen::VectorXd& u = v.vector(keys()[0]);
  Eigen::VectorXd r = Eigen::VectorXd::Zero(4);
  for (int j = 0; j < 4; ++j) {
    if (u[j] < lim_.lower_band()) {
      r[j] = lim_.lower_band() - u[j];
    } else if (u[j] >= lim_.upper_band()) {
      r[j] = u[j] - lim_.upper_band();
    }
  }
  return r;
}

std::vector<Eigen::MatrixXd> InputLimitFactor::jacobians(
    const fgo::Values& v) const {
  const Eigen::VectorXd& u = v.vector(keys()[0]);
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(4, 4);
  for (int j = 0; j < 4; ++j) {
    if (u[j] < lim_.lower_band()) {
      J(j, j) = -1.0;
    } else if (u[j] > lim_.upper_band()) {
      J(j, j) = 1.0;
    }
  }
  return {J};
}

}  // namespace jpcm
