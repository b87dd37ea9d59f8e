#pragma once

#include <random>

#include "jpcm/quad_params.hpp"
#include "jpcm/sim/noise.hpp"
#include "jpcm/state.hpp"

namespace jpcm::sim {

struct PlantStep {
  State x;
  RotorSpeeds u_actual;
};

// Advances the true state by one step: the rotors lag the command with the
// first-order time constant, each rotor thrust picks up additive noise before
// allocation, the rigid body integrates forward (with drag if enabled), and
// the body rate picks up additive noise afterwards. external_force is a
// world-frame force such as wind. Draws exactly four thrust samples and three
// rate samples per call when the respective sigmas are nonzero.
PlantStep plant_step(const State& truth, const RotorSpeeds& u_actual,
                     const RotorSpeeds& u_cmd, const QuadParams& params,
                     const NoiseConfig& noise, double dt, bool include_drag,
                     const Vec3& external_force, std::mt19937_64& rng);

}  // namespace jpcm::sim
