#include "jpcm/factors/relative_pose_factor.hpp"

namespace jpcm {

RelativePoseFactor::RelativePoseFactor(fgo::Key key_l, fgo::Key key_l1,
                                       RelativePoseMeasurement meas)
    : Factor({key_l, key_l1}, fgo::NoiseModel::from_covariance(meas.cov)),
      meas_(std::move(meas)) {}

Eigen::VectorXd RelativePoseFactor::error(const fgo::Values& v) const {
  const State& xl = v.state(keys()[0]);
  const State& xl1 = v.state(keys()[1]);
  const Pose3 X = meas_.T.inverse() * (xl.pose().inverse() * xl1.pose());
  return X.log();
}

std::vector<Eigen::MatrixXd> RelativePoseFactor::jacobians(
    const fgo::Values& v) const {
  const State& xl = v.state(keys()[0]);
  const State& xl1 = v.state(keys()[1]);

  const Mat3 Rm_t = meas_.T.rotation().matrix().transpose();
  const Mat3 Rl_t = xl.R.matrix().transpose();
  const Mat3 Zr = Rl_t * xl1.R.matrix();  // estimated relative rotation
  const Vec3 Zt = Rl_t * (xl1.p - xl.p);  // estimated relative translation
  const Vec3 r_rot = log_so3(Rm_t * Zr);
  const Mat3 Jr_inv = right_jacobian_inv_so3(r_rot);

  Eigen::MatrixXd Jl = Eigen::MatrixXd::Zero(6, 12);
  Jl.block<3, 3>(0, 3) = -Jr_inv * Zr.transpose();
  Jl.block<3, 3>(3, 0) = -Rm_t * Rl_t;
  Jl.block<3, 3>(3, 3) = Rm_t * skew(Zt);

  Eigen::MatrixXd Jl1 = Eigen::MatrixXd::Zero(6, 12);
  Jl1.block<3, 3>(0, 3) = Jr_inv;
  Jl1.block<3, 3>(3, 0) = Rm_t * Rl_t;

  return {Jl, Jl1};
}

}  // namespace jpcm
