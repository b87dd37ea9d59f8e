#include "jpcm/sim/run.hpp"

#include <cmath>
#include <exception>
#include <optional>

#include "jpcm/control/controller.hpp"
#include "jpcm/sim/plant.hpp"

namespace jpcm::sim {
namespace {

bool finite(const State& x) {
  return x.p.allFinite() && x.R.matrix().allFinite() && x.v.allFinite() &&
         x.omega.allFinite();
}

constexpr double kTimeEps = 1e-9;

}  // namespace

RunLog simulate_run(const Scenario& scenario, ControllerKind method,
                    std::uint64_t seed) {
  const double dt = scenario.horizon.dt;
  HorizonConfig horizon = scenario.horizon;
  if (method == ControllerKind::kMpc) horizon.M = 1;

  RunLog log;
  log.method = method;
  log.seed = seed;
  log.dt = dt;

  Controller controller(method, horizon, scenario.params, scenario.limits,
                        scenario.weights, scenario.solver);
  controller.set_warm_start(scenario.warm_start);
  auto process_rng = make_stream(seed, NoisePurpose::kProcess);
  auto obs_rng = make_stream(seed, NoisePurpose::kObservation);
  auto rel_rng = make_stream(seed, NoisePurpose::kRelative);
  const bool use_relative = method != ControllerKind::kMpc && horizon.M > 1;

  State truth = circle_initial_state(scenario.circle, scenario.params, dt);
  RotorSpeeds u_act = circle_reference(0.0, scenario.circle, scenario.params, dt).u;
  State prev_truth = truth;
  std::vector<bool> fired(scenario.disturbances.size(), false);

  const int n_steps = static_cast<int>(std::llround(scenario.duration / dt));
  log.steps.reserve(static_cast<std::size_t>(n_steps));

  for (int k = 0; k < n_steps; ++k) {
    const double t = k * dt;
    StepRecord rec;
    rec.t = t;
    rec.truth = truth;
    rec.ref = circle_reference(t, scenario.circle, scenario.params, dt);

    if (!finite(truth) ||
        (truth.p - rec.ref.p).norm() > scenario.divergence_limit) {
      log.diverged = true;
      log.diverged_at = t;
      break;
    }

    const AbsoluteObservation obs = sample_absolute(truth, scenario.noise, obs_rng);
    std::optional<RelativePoseMeasurement> rel;
    if (use_relative && k > 0) {
      rel = sample_relative(prev_truth, truth, scenario.noise, rel_rng);
    }
    std::vector<ReferencePoint> refs;
    refs.reserve(static_cast<std::size_t>(horizon.N));
    for (int j = 1; j <= horizon.N; ++j) {
      refs.push_back(
          circle_reference(t + j * dt, scenario.circle, scenario.params, dt));
    }

    ControlOutput out;
    try {
      out = controller.step(t, obs, refs, rel);
    } catch (const std::exception&) {
      log.diverged = true;
      log.diverged_at = t;
      break;
    }
    rec.observed = obs.z;
    rec.estimate = out.x0;
    rec.u_cmd = out.u;
    rec.iterations = out.stats.iterations;
    rec.cost = out.stats.final_cost;

    Vec3 wind = Vec3::Zero();
    for (const Disturbance& d : scenario.disturbances) {
      if (d.kind == DisturbanceKind::kWindForce && t >= d.time - kTimeEps &&
          t < d.time + d.duration - kTimeEps) {
        wind += d.vector;
      }
    }

    prev_truth = truth;
    const PlantStep step =
        plant_step(truth, u_act, out.u, scenario.params, scenario.noise, dt,
                   scenario.truth_drag, wind, process_rng);
    truth = step.x;
    u_act = step.u_actual;
    rec.u_act = step.u_actual;

    for (std::size_t i = 0; i < scenario.disturbances.size(); ++i) {
      const Disturbance& d = scenario.disturbances[i];
      if (d.kind != DisturbanceKind::kDisplacement) continue;
      if (!fired[i] && d.time <= t + dt + kTimeEps) {
        truth.p += d.vector;
        fired[i] = true;
        rec.event = rec.event.empty() ? "displacement" : rec.event + ";displacement";
      }
    }

    log.steps.push_back(std::move(rec));
  }
  return log;
}

}  // namespace jpcm::sim
