#include "jpcm/factors/reference_factor.hpp"

#include <utility>

namespace jpcm {

ReferenceFactor::ReferenceFactor(fgo::Key key, ReferencePoint ref,
                                 fgo::NoiseModel noise)
    : Factor({key}, std::move(noise)), ref_(std::move(ref)) {}

Eigen::VectorXd ReferenceFactor::error(const fgo::Values& v) const {
  const State& x = v.state(keys()[0]);
  Eigen::VectorXd r(9);
  r.segment<3>(0) = x.p - ref_.p;
  r.segment<3>(3) = x.v - ref_.v;
  r.segment<3>(6) = log_so3(x.R.matrix().transpose() * ref_.R.matrix());
  return r;
}

std::vector<Eigen::MatrixXd> ReferenceFactor::jacobians(
    const fgo::Values& v) const {
  const State& x = v.state(keys()[0]);
  const Mat3 B = x.R.matrix().transpose() * ref_.R.matrix();
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(9, 12);
  J.block<3, 3>(0, 0) = Mat3::Identity();
  J.block<3, 3>(3, 6) = Mat3::Identity();
  J.block<3, 3>(6, 3) = -right_jacobian_inv_so3(log_so3(B)) * B.transpose();
  return {J};
}

}  // namespace jpcm
