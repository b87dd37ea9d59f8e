#pragma once

#include <optional>
#include <string>

#include "jpcm/sim/run.hpp"

namespace jpcm::experiments {

// Per-run tracking error summary. Rotation error is Log(R_refᵀ R_true) taken
// component-wise, so its axes are the body axes of the reference frame.
struct RmseReport {
  std::string method;
  std::uint64_t seed = 0;
  Vec3 pos_rmse = Vec3::Zero();  // m
  Vec3 rot_rmse = Vec3::Zero();  // rad
  bool diverged = false;
  double diverged_at = -1.0;
};

// RMSE of truth vs reference over steps with t >= warmup. Throws
// std::invalid_argument when no steps survive the warm-up cut.
RmseReport compute_rmse(const sim::RunLog& log, double warmup);

// First time after the displacement at which the position error norm enters
// the tube and never leaves it again, measured from the disturbance time.
// Empty when the run never settles (or diverged).
std::optional<double> recovery_time(const sim::RunLog& log, double disturbance_time,
                                    double tube_radius);

}  // namespace jpcm::experiments
