#pragma once

#include <cmath>

#include "jpcm/lie.hpp"

namespace jpcm {

// Physical model of the vehicle. Rotor layout follows the allocation sign
// pattern: rotors 1..4 at (+lx,-ly), (+lx,+ly), (-lx,+ly), (-lx,-ly) with
// reaction-torque signs (+,-,+,-).
struct QuadParams {
  double mass = 1.0;      // kg
  double gravity = 10.0;  // m/s²
  Rot3 R_gw;              // gravity frame → world (identity: z up)

  Vec3 inertia = Vec3(0.01, 0.01, 0.02);  // body inertia diagonal, kg·m²

  double ct = 1.70e-8;      // thrust coefficient, N per unit²
  double km_ratio = 0.016;  // yaw torque per unit thrust, m
  double lx = 0.13;         // rotor arm x, m
  double ly = 0.13;         // rotor arm y, m

  Mat3 drag = Mat3::Zero();  // body-frame linear drag D
  double drag_sign = 1.0;    // sign of the (R·D·Rᵀ·v)/m term in v̇

  double tc = 0.010;  // actuator first-order time constant, s

  double thrust_sigma = 0.1;  // per-rotor thrust process noise σ, N
  double omega_sigma = 0.02;  // angular-rate process noise σ, rad/s

  double km() const { return km_ratio * ct; }
  // Per-rotor speed that exactly cancels gravity.
  double hover_speed() const { return std::sqrt(mass * gravity / (4.0 * ct)); }
  // World-frame gravity acceleration vector (points down for identity R_gw).
  Vec3 gravity_vec() const { return R_gw.rotate(Vec3(0, 0, gravity)); }
};

}  // namespace jpcm
