#pragma once

#include <optional>
#include <vector>

#include "jpcm/control/builders.hpp"
#include "jpcm/fgo/lm.hpp"

namespace jpcm {

struct ControlOutput {
  RotorSpeeds u = RotorSpeeds::Zero();  // optimized first input
  State x0;                             // smoothed current-state estimate
  fgo::SolveStats stats;
};

// One closed-loop controller instance. Each cycle pushes the observation into
// the window, builds the configured problem, solves it, and returns the first
// input. Until the window fills, the effective M grows with the number of
// observations seen.
//
// By default every cycle cold-starts from the builder rollout. With
// warm_start enabled, each cycle seeds the optimizer from the previous
// solution shifted by one step, and the very first cycle gets a deeper
// iteration budget to establish the trajectory that later cycles refine.
// Required in closed loop on aggressive references, where a cold solve needs
// far more iterations than the per-cycle cap.
class Controller {
 public:
  Controller(ControllerKind kind, HorizonConfig horizon, QuadParams params,
             InputLimits limits = {}, Weights weights = {},
             fgo::SolverConfig solver = {});

  void set_warm_start(bool on) { warm_start_ = on; }
  bool warm_start() const { return warm_start_; }

  // rel links the previous observation to this one; required once the window
  // retains an earlier observation (M > 1).
  ControlOutput step(double t, const AbsoluteObservation& obs,
                     const std::vector<ReferencePoint>& refs,
                     const std::optional<RelativePoseMeasurement>& rel =
                         std::nullopt);

  ControllerKind kind() const { return kind_; }
  const WindowBuffer& window() const { return window_; }

 private:
  ControllerKind kind_;
  HorizonConfig horizon_;
  QuadParams params_;
  InputLimits limits_;
  Weights weights_;
  fgo::SolverConfig solver_;
  WindowBuffer window_;
  bool warm_start_ = false;
  std::optional<fgo::Values> previous_;
};

}  // namespace jpcm
