#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jpcm/control/config.hpp"
#include "jpcm/sim/scenario.hpp"

namespace jpcm::sim {

// One control cycle. truth and observed refer to the instant the controller
// ran; u_act is the rotor speed that drove the plant over the following step.
struct StepRecord {
  double t = 0.0;
  State truth;
  State observed;
  State estimate;
  ReferencePoint ref;
  RotorSpeeds u_cmd = RotorSpeeds::Zero();
  RotorSpeeds u_act = RotorSpeeds::Zero();
  int iterations = 0;
  double cost = 0.0;
  std::string event;  // empty, or the disturbance fired during this step
};

struct RunLog {
  ControllerKind method = ControllerKind::kMpc;
  std::uint64_t seed = 0;
  std::uint64_t config_hash = 0;  // filled by the scenario layer
  double dt = 0.01;
  bool diverged = false;
  double diverged_at = -1.0;
  std::vector<StepRecord> steps;
};

// Runs the closed loop at 1/dt Hz for the scenario duration. The truth starts
// on the circle. Divergence is declared when the position error passes the
// scenario limit or the solve throws; the log ends at that step.
RunLog simulate_run(const Scenario& scenario, ControllerKind method,
                    std::uint64_t seed);

}  // namespace jpcm::sim
