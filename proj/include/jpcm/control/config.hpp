#pragma once

#include "jpcm/state.hpp"

namespace jpcm {

enum class ControllerKind { kMpc, kJpcm, kJpcmSw, kJpcmDrag };

// Window and horizon geometry: M historical states constrained by
// observations, N predicted states at control period dt.
struct HorizonConfig {
  int M = 1;
  int N = 20;
  double dt = 0.01;
};

// Per-component sigmas of every weighting matrix in the joint problem.
struct Weights {
  static Eigen::Matrix<double, 9, 1> stage_sigmas(double p, double v,
                                                  double th) {
    Eigen::Matrix<double, 9, 1> s;
    s << Vec3::Constant(p), Vec3::Constant(v), Vec3::Constant(th);
    return s;
  }
  static Vec12 state_sigmas(double p, double th, double v, double om) {
    Vec12 s;
    s << Vec3::Constant(p), Vec3::Constant(th), Vec3::Constant(v),
        Vec3::Constant(om);
    return s;
  }

  // Reference stage weights, blocks [p, v, θ]; q_n applies at the horizon end.
  Eigen::Matrix<double, 9, 1> q_k = stage_sigmas(0.03, 0.3, 3.0);
  Eigen::Matrix<double, 9, 1> q_n = stage_sigmas(0.01, 0.3, 3.0);
  double r_t = 1000.0;  // input change rate, per component
  // Absolute observation sigmas, blocks [p, θ, v, ω].
  Vec12 p_c = state_sigmas(0.2, 0.03, 0.05, 0.001);
  // Relative pose sigmas, blocks [θ, ρ].
  Vec6 p_l = Vec6::Constant(0.03);
  double prior_sigma = 1e-6;  // pins x₀ when the initial state is fixed
};

}  // namespace jpcm
