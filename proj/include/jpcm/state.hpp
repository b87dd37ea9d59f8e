#pragma once

#include "jpcm/lie.hpp"

namespace jpcm {

using Vec4 = Eigen::Vector4d;
using Vec12 = Eigen::Matrix<double, 12, 1>;

// Per-rotor motor speeds, in the raw actuator units the input bounds are
// expressed in. Thrust of rotor j is ct·u_j².
using RotorSpeeds = Eigen::Vector4d;

// Quadrotor navigation state. Tangent order is [δp, δθ, δv, δω]; the rotation
// block is a right perturbation, everything else is additive.
struct State {
  static constexpr int kTangentDim = 12;

  Vec3 p = Vec3::Zero();      // position, world frame
  Rot3 R;                     // attitude, body→world
  Vec3 v = Vec3::Zero();      // velocity, world frame
  Vec3 omega = Vec3::Zero();  // angular rate, body frame

  State retract(const Vec12& d) const {
    State out;
    out.p = p + d.segment<3>(0);
    out.R = R * Rot3::exp(d.segment<3>(3));
    out.v = v + d.segment<3>(6);
    out.omega = omega + d.segment<3>(9);
    return out;
  }

  // Tangent vector taking *this to other (inverse of retract).
  Vec12 local(const State& other) const {
    Vec12 d;
    d.segment<3>(0) = other.p - p;
    d.segment<3>(3) = log_so3(R.matrix().transpose() * other.R.matrix());
    d.segment<3>(6) = other.v - v;
    d.segment<3>(9) = other.omega - omega;
    return d;
  }

  Pose3 pose() const { return Pose3(R, p); }
};

}  // namespace jpcm
