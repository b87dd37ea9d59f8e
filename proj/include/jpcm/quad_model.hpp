#pragma once

#include "jpcm/quad_params.hpp"
#include "jpcm/state.hpp"

namespace jpcm {

// Body-frame net thrust (along +z) and torque produced by the rotors.
struct BodyWrench {
  Vec3 thrust = Vec3::Zero();
  Vec3 torque = Vec3::Zero();
};

// Maps per-rotor thrust forces F (N) to [T_z; Mx; My; Mz]. The thrust rows of
// the u²→wrench map are this matrix times ct.
Eigen::Matrix4d force_allocation_matrix(const QuadParams& params);

BodyWrench allocate(const RotorSpeeds& u, const QuadParams& params);

struct StateDerivative {
  Vec3 pdot;
  Vec3 vdot;        // includes drag when enabled
  Vec3 vdot_rigid;  // thrust+gravity only; drives the position update
  Vec3 omegadot;
};

StateDerivative dynamics(const State& x, const BodyWrench& w,
                         const QuadParams& params, bool include_drag);

inline StateDerivative dynamics(const State& x, const RotorSpeeds& u,
                                const QuadParams& params, bool include_drag) {
  return dynamics(x, allocate(u, params), params, include_drag);
}

// One discrete step of the model every factor assumes:
//   p'     = p + v·Δt + ½·vdot_rigid·Δt²
//   R'     = R·exp(ω·Δt)
//   v'     = v + vdot·Δt
//   ω'     = ω + I⁻¹(M − ω×Iω)·Δt
State propagate(const State& x, const BodyWrench& w, const QuadParams& params,
                double dt, bool include_drag);

inline State propagate(const State& x, const RotorSpeeds& u,
                       const QuadParams& params, double dt, bool include_drag) {
  return propagate(x, allocate(u, params), params, dt, include_drag);
}

// Diagonal covariance of the discrete-step residual, from per-rotor thrust
// noise variance s = thrust_sigma² pushed through the allocation geometry.
// Zero diagonal entries of the thrust-derived blocks are floored at 1e-6.
struct ProcessNoise {
  Vec3 pos_var;
  Vec3 rot_var;
  Vec3 vel_var;
  Vec3 omega_var;

  Vec12 stacked_var() const {
    Vec12 v;
    v << pos_var, rot_var, vel_var, omega_var;
    return v;
  }
  Vec12 stacked_sigma() const { return stacked_var().cwiseSqrt(); }
};

ProcessNoise process_covariances(const QuadParams& params, double dt);

// Exact discretization of the first-order actuator lag; speeds clamp at 0.
// tc <= 0 means instantaneous response.
RotorSpeeds actuator_step(const RotorSpeeds& u_actual,
                          const RotorSpeeds& u_cmd, double tc, double dt);

}  // namespace jpcm
