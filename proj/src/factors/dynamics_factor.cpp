#include "jpcm/factors/dynamics_factor.hpp"

namespace jpcm {

DynamicsFactor::DynamicsFactor(fgo::Key state_i, fgo::Key input_i,
                               fgo::Key state_i1, const QuadParams& params,
                               double dt, bool include_drag)
    : Factor({state_i, input_i, state_i1},
             fgo::NoiseModel::from_variances(
                 process_covariances(params, dt).stacked_var())),
      params_(params),
      dt_(dt),
      include_drag_(include_drag) {}

Eigen::VectorXd DynamicsFactor::error(const fgo::Values& v) const {
  const State& xi = v.state(keys()[0]);
  const RotorSpeeds u = v.vector(keys()[1]);
  const State& xj = v.state(keys()[2]);

  const BodyWrench w = allocate(u, params_);
  const Mat3 Rt = xi.R.matrix().transpose();
  const Vec3 ge3 = params_.gravity_vec();
  const double m = params_.mass;
  const Vec3 Ib = params_.inertia;

  Eigen::VectorXd r(12);
  r.segment<3>(0) =
      Rt * (m * (xj.p - xi.p - xi.v * dt_ + 0.5 * ge3 * dt_ * dt_)) -
      0.5 * dt_ * dt_ * w.thrust;
  r.segment<3>(3) = log_so3(Rt * xj.R.matrix()) - xi.omega * dt_;
  r.segment<3>(6) = Rt * (m * (xj.v - xi.v + ge3 * dt_)) - dt_ * w.thrust;
  if (include_drag_) {
    r.segment<3>(6) -= params_.drag * (Rt * xi.v) * dt_;
  }
  r.segment<3>(9) =
      Ib.asDiagonal() * (xj.omega - xi.omega) -
      (w.torque - xi.omega.cross(Ib.asDiagonal() * xi.omega)) * dt_;
  return r;
}

std::vector<Eigen::MatrixXd> DynamicsFactor::jacobians(
    const fgo::Values& v) const {
  const State& xi = v.state(keys()[0]);
  const RotorSpeeds u = v.vector(keys()[1]);
  const State& xj = v.state(keys()[2]);

  const Mat3 Rt = xi.R.matrix().transpose();
  const Vec3 ge3 = params_.gravity_vec();
  const double m = params_.mass;
  const Mat3 Ib = params_.inertia.asDiagonal();

  const Vec3 p_p = m * (xj.p - xi.p - xi.v * dt_ + 0.5 * ge3 * dt_ * dt_);
  const Vec3 p_v = m * (xj.v - xi.v + ge3 * dt_);
  const Mat3 A = Rt * xj.R.matrix();
  const Mat3 Jr_inv = right_jacobian_inv_so3(log_so3(A));

  Eigen::MatrixXd Ji = Eigen::MatrixXd::Zero(12, 12);
  Ji.block<3, 3>(0, 0) = -m * Rt;
  Ji.block<3, 3>(0, 3) = skew(Rt * p_p);
  Ji.block<3, 3>(0, 6) = -m * dt_ * Rt;
  Ji.block<3, 3>(3, 3) = -Jr_inv * A.transpose();
  Ji.block<3, 3>(3, 9) = -dt_ * Mat3::Identity();
  Ji.block<3, 3>(6, 3) = skew(Rt * p_v);
  Ji.block<3, 3>(6, 6) = -m * Rt;
  Ji.block<3, 3>(9, 9) =
      -Ib + (skew(xi.omega) * Ib - skew(Ib * xi.omega)) * dt_;
  if (include_drag_) {
    Ji.block<3, 3>(6, 3) -= params_.drag * skew(Rt * xi.v) * dt_;
    Ji.block<3, 3>(6, 6) -= params_.drag * Rt * dt_;
  }

  // Wrench sensitivity through the quadratic thrust map: ∂[T;M]/∂u.
  const Eigen::Matrix4d dtau_du =
      force_allocation_matrix(params_) *
      Eigen::Vector4d(2.0 * params_.ct * u).asDiagonal();
  Eigen::MatrixXd Ju = Eigen::MatrixXd::Zero(12, 4);
  Ju.row(2) = -0.5 * dt_ * dt_ * dtau_du.row(0);
  Ju.row(8) = -dt_ * dtau_du.row(0);
  Ju.block<3, 4>(9, 0) = -dt_ * dtau_du.bottomRows<3>();

  Eigen::MatrixXd Jj = Eigen::MatrixXd::Zero(12, 12);
  Jj.block<3, 3>(0, 0) = m * Rt;
  Jj.block<3, 3>(3, 3) = Jr_inv;
  Jj.block<3, 3>(6, 6) = m * Rt;
  Jj.block<3, 3>(9, 9) = Ib;

  return {Ji, Ju, Jj};
}

}  // namespace jpcm
