#include "jpcm/control/builders.hpp"

#include <stdexcept>

namespace jpcm {
namespace {

// Control-side factors and the rolled-out initial trajectory, shared by both
// problem kinds.
void add_control_side(const State& x0, const std::vector<ReferencePoint>& refs,
                      const QuadParams& params, const InputLimits& limits,
                      const HorizonConfig& horizon, bool include_drag,
                      const Weights& weights, Problem& out) {
  const int n = horizon.N;
  if (static_cast<int>(refs.size()) != n) {
    throw std::invalid_argument("build: expected one reference point per step");
  }
  const auto q_k = fgo::NoiseModel::from_sigmas(weights.q_k);
  const auto q_n = fgo::NoiseModel::from_sigmas(weights.q_n);

  out.initial.insert(fgo::state_key(0), x0);
  State x = x0;
  for (int k = 0; k < n; ++k) {
    x = propagate(x, refs[k].u, params, horizon.dt, include_drag);
    out.initial.insert(fgo::state_key(k + 1), x);
    out.initial.insert(fgo::input_key(k), Eigen::VectorXd(refs[k].u));

    out.graph.emplace<DynamicsFactor>(fgo::state_key(k), fgo::input_key(k),
                                      fgo::state_key(k + 1), params,
                                      horizon.dt, include_drag);
    out.graph.emplace<ReferenceFactor>(fgo::state_key(k + 1), refs[k],
                                       k + 1 == n ? q_n : q_k);
    out.graph.emplace<InputLimitFactor>(fgo::input_key(k), limits);
    if (k > 0) {
      out.graph.emplace<InputRateFactor>(fgo::input_key(k - 1),
                                         fgo::input_key(k), weights.r_t);
    }
  }
}

}  // namespace

Problem build_mpc(const State& x_obs, const std::vector<ReferencePoint>& refs,
                  const QuadParams& params, const InputLimits& limits,
                  const HorizonConfig& horizon, const Weights& weights) {
  Problem out;
  add_control_side(x_obs, refs, params, limits, horizon, false, weights, out);
  AbsoluteObservation pin;
  pin.z = x_obs;
  pin.sigmas = Vec12::Constant(weights.prior_sigma);
  out.graph.emplace<AbsoluteStateFactor>(fgo::state_key(0), pin);
  return out;
}

Problem build_jpcm(const WindowBuffer& window,
                   const std::vector<ReferencePoint>& refs,
                   const QuadParams& params, const InputLimits& limits,
                   const HorizonConfig& horizon, ControllerKind kind,
                   const Weights& weights) {
  if (kind == ControllerKind::kMpc) {
    throw std::invalid_argument("build_jpcm: use build_mpc for the MPC kind");
  }
  const int m = horizon.M;
  if (window.size() != m) {
    throw std::invalid_argument("build_jpcm: window does not hold M observations");
  }

  Problem out;
  add_control_side(window.entry(m - 1).obs.z, refs, params, limits, horizon,
                   kind == ControllerKind::kJpcmDrag, weights, out);

  // Estimation side: historical states carry indices −M+1..0; index 0 is
  // shared with the control chain.
  for (int j = 0; j < m; ++j) {
    const int idx = j - (m - 1);
    AbsoluteObservation obs = window.entry(j).obs;
    obs.sigmas = weights.p_c;
    if (idx != 0) out.initial.insert(fgo::state_key(idx), obs.z);
    out.graph.emplace<AbsoluteStateFactor>(fgo::state_key(idx), obs);
    if (j > 0) {
      RelativePoseMeasurement rel = window.relative(j - 1);
      rel.cov = weights.p_l.cwiseProduct(weights.p_l).asDiagonal();
      out.graph.emplace<RelativePoseFactor>(fgo::state_key(idx - 1),
                                            fgo::state_key(idx), rel);
    }
  }
  return out;
}

}  // namespace jpcm
