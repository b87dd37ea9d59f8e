#include "jpcm/factors/absolute_factor.hpp"

namespace jpcm {

AbsoluteStateFactor::AbsoluteStateFactor(fgo::Key key, AbsoluteObservation obs)
    : Factor({key}, fgo::NoiseModel::from_sigmas(obs.sigmas)),
      obs_(std::move(obs)) {}

Eigen::VectorXd AbsoluteStateFactor::error(const fgo::Values& v) const {
  // State::local stacks [δp, δθ, δv, δω], which is exactly the residual order.
  return obs_.z.local(v.state(keys()[0]));
}

std::vector<Eigen::MatrixXd> AbsoluteStateFactor::jacobians(
    const fgo::Values& v) const {
  const State& x = v.state(keys()[0]);
  const Vec3 r_theta = log_so3(obs_.z.R.matrix().transpose() * x.R.matrix());
  Eigen::MatrixXd J = Eigen::MatrixXd::Identity(12, 12);
  J.block<3, 3>(3, 3) = right_jacobian_inv_so3(r_theta);
  return {J};
}

}  // namespace jpcm
