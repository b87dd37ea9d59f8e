#include "jpcm/control/controller.hpp"

#include <stdexcept>
#include <utility>

namespace jpcm {

Controller::Controller(ControllerKind kind, HorizonConfig horizon,
                       QuadParams params, InputLimits limits, Weights weights,
                       fgo::SolverConfig solver)
    : kind_(kind),
      horizon_(horizon),
      params_(std::move(params)),
      limits_(limits),
      weights_(std::move(weights)),
      solver_(solver),
      window_(kind == ControllerKind::kMpc ? 1 : horizon.M) {
  if (horizon_.M < 1 || horizon_.N < 1 || horizon_.dt <= 0.0) {
    throw std::invalid_argument("Controller: invalid horizon");
  }
  if (kind_ == ControllerKind::kMpc && horizon_.M != 1) {
    throw std::invalid_argument("Controller: MPC uses a single observed state");
  }
  if (kind_ == ControllerKind::kJpcmSw && horizon_.M < 2) {
    throw std::invalid_argument("Controller: sliding window needs M > 1");
  }
}

ControlOutput Controller::step(
    double t, const AbsoluteObservation& obs,
    const std::vector<ReferencePoint>& refs,
    const std::optional<RelativePoseMeasurement>& rel) {
  window_.push(t, obs, rel);

  Problem problem;
  if (kind_ == ControllerKind::kMpc) {
    problem = build_mpc(obs.z, refs, params_, limits_, horizon_, weights_);
  } else {
    HorizonConfig effective = horizon_;
    effective.M = window_.size();  // grows until the window is full
    problem =
        build_jpcm(window_, refs, params_, limits_, effective, kind_, weights_);
  }

  fgo::SolverConfig cfg = solver_;
  if (warm_start_) {
    if (previous_) {
      // Seed every variable from the previous solution shifted one step
      // forward; the horizon tail reuses its own previous value.
      for (const fgo::Key k : problem.initial.keys()) {
        const fgo::Key shifted{k.kind, k.index + 1};
        if (previous_->has(shifted)) {
          if (k.kind == fgo::Kind::State) {
            problem.initial.insert(k, previous_->state(shifted));
          } else {
            problem.initial.insert(k, previous_->vector(shifted));
          }
        } else if (previous_->has(k)) {
          if (k.kind == fgo::Kind::State) {
            problem.initial.insert(k, previous_->state(k));
          } else {
            problem.initial.insert(k, previous_->vector(k));
          }
        }
      }
    } else {
      cfg.max_iterations = std::max(cfg.max_iterations, 500);
    }
  }

  fgo::SolveResult res = fgo::solve_lm(problem.graph, problem.initial, cfg);
  previous_ = res.values;
  ControlOutput out;
  // Commands leave the controller saturated to the actuator envelope. The
  // hinge keeps the optimum inside the soft band; the clamp only binds when
  // a transient pushes the unconstrained optimum past the hard limits.
  out.u = res.values.vector(fgo::input_key(0))
              .cwiseMax(limits_.u_min)
              .cwiseMin(limits_.u_max);
  out.x0 = res.values.state(fgo::state_key(0));
  out.stats = std::move(res.stats);
  return out;
}

}  // namespace jpcm
