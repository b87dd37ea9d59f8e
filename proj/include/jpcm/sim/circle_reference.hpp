#pragma once

#include "jpcm/factors/reference_factor.hpp"
#include "jpcm/quad_params.hpp"
#include "jpcm/state.hpp"

namespace jpcm::sim {

// Constant-speed circle in the horizontal plane.
struct CircleReference {
  double radius = 1.5;  // m
  double speed = 5.0;   // m/s
  Vec3 center = Vec3::Zero();
};

// Reference sample at time t for a controller stepping at dt. Attitude comes
// from differential flatness evaluated on the discrete model: the body z-axis
// carries the one-step position increment m(p₊ − p − vΔt + ½gΔt²e₃), which
// zeroes the position row of the discrete dynamics along the reference, and
// the heading follows the chord. The attitude precesses rigidly about world z
// at speed/radius. A world-fixed heading is not flyable here: it needs yaw
// torque far beyond what the rotor geometry can deliver on a circle this
// tight. The feed-forward speed u splits the thrust equally across rotors.
ReferencePoint circle_reference(double t, const CircleReference& cfg,
                                const QuadParams& params, double dt);

// Truth state on the circle at t = 0; the body rate is the finite-difference
// rate of the reference attitude over one step.
State circle_initial_state(const CircleReference& cfg, const QuadParams& params,
                           double dt);

}  // namespace jpcm::sim
