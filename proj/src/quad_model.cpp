#include "jpcm/quad_model.hpp"

#include <cmath>

namespace jpcm {

Eigen::Matrix4d force_allocation_matrix(const QuadParams& p) {
  Eigen::Matrix4d a;
  const double k = p.km_ratio;
  // clang-format off
  a <<     1,     1,     1,     1,
       -p.ly,  p.ly,  p.ly, -p.ly,
       -p.lx, -p.lx,  p.lx,  p.lx,
           k,    -k,     k,    -k;
  // clang-format on
  return a;
}

BodyWrench allocate(const RotorSpeeds& u, const QuadParams& params) {
  const Eigen::Vector4d forces = params.ct * u.cwiseProduct(u);
  const Eigen::Vector4d tm = force_allocation_matrix(params) * forces;
  BodyWrench w;
  w.thrust = Vec3(0, 0, tm(0));
  w.torque = tm.tail<3>();
  return w;
}

StateDerivative dynamics(const State& x, const BodyWrench& w,
                         const QuadParams& params, bool include_drag) {
  StateDerivative d;
  d.pdot = x.v;
  const Mat3 R = x.R.matrix();
  d.vdot_rigid = -params.gravity_vec() + R * w.thrust / params.mass;
  d.vdot = d.vdot_rigid;
  if (include_drag) {
    d.vdot += params.drag_sign * R * params.drag * R.transpose() * x.v /
              params.mass;
  }
  const Vec3 Iw = params.inertia.cwiseProduct(x.omega);
  d.omegadot = (w.torque - x.omega.cross(Iw)).cwiseQuotient(params.inertia);
  return d;
}

State propagate(const State& x, const BodyWrench& w, const QuadParams& params,
                double dt, bool include_drag) {
  const StateDerivative d = dynamics(x, w, params, include_drag);
  State out;
  out.p = x.p + x.v * dt + 0.5 * d.vdot_rigid * dt * dt;
  out.R = x.R * Rot3::exp(x.omega * dt);
  out.v = x.v + d.vdot * dt;
  out.omega = x.omega + d.omegadot * dt;
  return out;
}

ProcessNoise process_covariances(const QuadParams& params, double dt) {
  static constexpr double kVarFloor = 1e-6;
  const double s = params.thrust_sigma * params.thrust_sigma;
  // Total-thrust variance 4s enters z only; torque variance through the arms
  // and the force→yaw-torque ratio.
  const Vec3 thrust_var(0, 0, 4.0 * s);
  const Vec3 torque_var(4.0 * params.ly * params.ly * s,
                        4.0 * params.lx * params.lx * s,
                        4.0 * params.km_ratio * params.km_ratio * s);
  // The floor covers the one-step discretization error of the integrator,
  // which dominates the rotor-noise contribution in the rotation and torque
  // rows at aggressive body rates. Without it those rows act as equality
  // constraints far tighter than the model is accurate, and the optimizer
  // crawls.
  const auto floored = [](const Vec3& v) { return v.cwiseMax(kVarFloor); };
  ProcessNoise n;
  n.pos_var = floored(0.25 * dt * dt * dt * dt * thrust_var);
  n.rot_var = floored(Vec3::Constant(std::pow(params.omega_sigma * dt, 2)));
  n.vel_var = floored(dt * dt * thrust_var);
  n.omega_var = floored(dt * dt * torque_var);
  return n;
}

RotorSpeeds actuator_step(const RotorSpeeds& u_actual,
                          const RotorSpeeds& u_cmd, double tc, double dt) {
  if (tc <= 0.0) {
    return u_cmd.cwiseMax(0.0);
  }
  const double decay = std::exp(-dt / tc);
  return (u_cmd + (u_actual - u_cmd) * decay).cwiseMax(0.0);
}

}  // namespace jpcm
