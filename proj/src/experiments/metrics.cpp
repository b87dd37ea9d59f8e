#include "jpcm/experiments/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "jpcm/lie.hpp"

namespace jpcm::experiments {

RmseReport compute_rmse(const sim::RunLog& log, double warmup) {
  RmseReport rep;
  rep.seed = log.seed;
  rep.diverged = log.diverged;
  rep.diverged_at = log.diverged_at;

  Vec3 sp = Vec3::Zero();
  Vec3 sr = Vec3::Zero();
  long n = 0;
  for (const sim::StepRecord& s : log.steps) {
    if (s.t < warmup) continue;
    const Vec3 pe = s.truth.p - s.ref.p;
    const Vec3 re = log_so3(s.ref.R.matrix().transpose() * s.truth.R.matrix());
    sp += pe.cwiseProduct(pe);
    sr += re.cwiseProduct(re);
    ++n;
  }
  if (n == 0) {
    throw std::invalid_argument("compute_rmse: no steps beyond the warm-up window");
  }
  rep.pos_rmse = (sp / static_cast<double>(n)).cwiseSqrt();
  rep.rot_rmse = (sr / static_cast<double>(n)).cwiseSqrt();
  return rep;
}

std::optional<double> recovery_time(const sim::RunLog& log, double disturbance_time,
                                    double tube_radius) {
  if (log.diverged) return std::nullopt;
  // Walk backwards: the recovery point is just after the last exceedance.
  double last_out = disturbance_time;
  bool any_inside_after = false;
  for (auto it = log.steps.rbegin(); it != log.steps.rend(); ++it) {
    if (it->t <= disturbance_time) break;
    const double err = (it->truth.p - it->ref.p).norm();
    if (err > tube_radius) {
      last_out = it->t;
      break;
    }
    any_inside_after = true;
  }
  if (!any_inside_after) return std::nullopt;
  // First in-tube sample after the last exceedance.
  for (const sim::StepRecord& s : log.steps) {
    if (s.t <= last_out) continue;
    if ((s.truth.p - s.ref.p).norm() <= tube_radius) {
      return s.t - disturbance_time;
    }
  }
  return std::nullopt;
}

}  // namespace jpcm::experiments
