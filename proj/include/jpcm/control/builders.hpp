#pragma once

#include <vector>

#include "jpcm/control/config.hpp"
#include "jpcm/control/window_buffer.hpp"
#include "jpcm/factors.hpp"
#include "jpcm/fgo/graph.hpp"

namespace jpcm {

struct Problem {
  fgo::FactorGraph graph;
  fgo::Values initial;
};

// Pure control problem over horizon.N steps: x₀ pinned to the observation by
// a tight prior, dynamics factors chaining x₀..x_N, reference factors on
// x₁..x_N, rate and band factors on u₀..u_{N−1}. The initial trajectory rolls
// the model out from x_obs under the feed-forward speeds refs[k].u.
Problem build_mpc(const State& x_obs, const std::vector<ReferencePoint>& refs,
                  const QuadParams& params, const InputLimits& limits,
                  const HorizonConfig& horizon, const Weights& weights);

// Joint problem: the same control factors with x₀ free, plus the estimation
// side: absolute factors on the historical states x_{−M+1}..x₀ and relative
// factors between consecutive ones. The window must hold exactly horizon.M
// observations. kJpcmDrag turns the drag term on in dynamics and rollout.
Problem build_jpcm(const WindowBuffer& window,
                   const std::vector<ReferencePoint>& refs,
                   const QuadParams& params, const InputLimits& limits,
                   const HorizonConfig& horizon, ControllerKind kind,
                   const Weights& weights);

}  // namespace jpcm
