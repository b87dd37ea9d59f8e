#pragma once

#include <vector>

#include "jpcm/control/config.hpp"
#include "jpcm/factors/input_limit_factor.hpp"
#include "jpcm/fgo/lm.hpp"
#include "jpcm/quad_params.hpp"
#include "jpcm/sim/circle_reference.hpp"
#include "jpcm/sim/noise.hpp"

namespace jpcm::sim {

enum class DisturbanceKind { kDisplacement, kWindForce };

// One scheduled plant disturbance. A displacement shifts the true position
// once, at the first plant step whose interval contains the trigger time. A
// wind force acts on the translational dynamics from the trigger time for the
// given duration.
struct Disturbance {
  double time = 0.0;
  DisturbanceKind kind = DisturbanceKind::kDisplacement;
  Vec3 vector = Vec3::Zero();  // meters for displacement, newtons for wind
  double duration = 0.0;       // seconds, wind only
};

using DisturbanceSchedule = std::vector<Disturbance>;

// Everything one closed-loop run needs besides the method and the seed.
struct Scenario {
  double duration = 20.0;          // s
  double divergence_limit = 5.0;   // m of position error
  QuadParams params;               // shared by plant and controller model
  bool truth_drag = false;         // the plant applies params.drag
  CircleReference circle;
  NoiseConfig noise;
  DisturbanceSchedule disturbances;
  HorizonConfig horizon;           // M applies to the sliding-window methods
  InputLimits limits;
  Weights weights;
  // Budget sized so warm-started cycles converge instead of truncating: the
  // joint problems average 20-40 iterations under full observation noise.
  fgo::SolverConfig solver{.max_iterations = 150};
  bool warm_start = true;          // shift-seed each cycle from the last one
};

}  // namespace jpcm::sim
