#include "jpcm/factors/input_rate_factor.hpp"

namespace jpcm {

InputRateFactor::InputRateFactor(fgo::Key key_t, fgo::Key key_t1, double sigma)
    : Factor({key_t, key_t1}, fgo::NoiseModel::isotropic(4, sigma)) {}

Eigen::VectorXd InputRateFactor::error(const fgo::Values& v) const {
  return v.vector(keys()[0]) - v.vector(keys()[1]);
}

std::vector<Eigen::MatrixXd> InputRateFactor::jacobians(
    const fgo::Values&) const {
  return {Eigen::MatrixXd::Identity(4, 4), -Eigen::MatrixXd::Identity(4, 4)};
}

}  // namespace jpcm
