#include "jpcm/sim/circle_reference.hpp"

#include <cmath>
#include <stdexcept>

#include "jpcm/lie.hpp"

namespace jpcm::sim {
namespace {

Vec3 circle_pos(double t, const CircleReference& cfg) {
  const double phi = cfg.speed / cfg.radius * t;
  return cfg.center + cfg.radius * Vec3(std::cos(phi), std::sin(phi), 0.0);
}

Vec3 circle_vel(double t, const CircleReference& cfg) {
  const double phi = cfg.speed / cfg.radius * t;
  return cfg.speed * Vec3(-std::sin(phi), std::cos(phi), 0.0);
}

// Attitude and total thrust that zero the one-step position row of the
// discrete dynamics between the samples at t and t + dt. The body z-axis
// carries m(p₊ − p − vΔt + ½gΔt²e₃) and the heading follows the chord.
void circle_attitude(double t, double dt, const CircleReference& cfg,
                     const QuadParams& params, Mat3& R, double& thrust) {
  const Vec3 p = circle_pos(t, cfg);
  const Vec3 p_next = circle_pos(t + dt, cfg);
  const Vec3 v = circle_vel(t, cfg);

  const Vec3 zvec = params.mass * (p_next - p - v * dt) +
                    0.5 * params.mass * params.gravity_vec() * dt * dt;
  const double zn = zvec.norm();
  if (zn < 1e-12) {
    throw std::domain_error("circle_reference: free-fall reference has no attitude");
  }
  const Vec3 zb = zvec / zn;
  thrust = 2.0 * zn / (dt * dt);

  const Vec3 chord = p_next - p;
  const double cn = chord.norm();
  if (cn < 1e-12) {
    throw std::domain_error("circle_reference: stationary reference has no heading");
  }
  const Vec3 xc = chord / cn;
  Vec3 yb = zb.cross(xc);
  const double yn = yb.norm();
  if (yn < 1e-9) {
    throw std::domain_error("circle_reference: heading is parallel to thrust axis");
  }
  yb /= yn;
  const Vec3 xb = yb.cross(zb);
  R.col(0) = xb;
  R.col(1) = yb;
  R.col(2) = zb;
}

}  // namespace

ReferencePoint circle_reference(double t, const CircleReference& cfg,
                                const QuadParams& params, double dt) {
  if (dt <= 0.0) {
    throw std::invalid_argument("circle_reference: dt must be positive");
  }
  ReferencePoint ref;
  ref.p = circle_pos(t, cfg);
  ref.v = circle_vel(t, cfg);

  Mat3 R;
  double thrust = 0.0;
  circle_attitude(t, dt, cfg, params, R, thrust);
  ref.R = Rot3(R);
  ref.u = RotorSpeeds::Constant(std::sqrt(thrust / (4.0 * params.ct)));
  return ref;
}

State circle_initial_state(const CircleReference& cfg, const QuadParams& params,
                           double dt) {
  const ReferencePoint r0 = circle_reference(0.0, cfg, params, dt);
  const ReferencePoint r1 = circle_reference(dt, cfg, params, dt);
  State x;
  x.p = r0.p;
  x.R = r0.R;
  x.v = r0.v;
  x.omega = log_so3(r0.R.matrix().transpose() * r1.R.matrix()) / dt;
  return x;
}

}  // namespace jpcm::sim
