#pragma once

#include "jpcm/fgo/factor.hpp"
#include "jpcm/quad_model.hpp"

namespace jpcm {

// Ternary factor (x_i, u_i, x_{i+1}) encoding one discrete step of the rigid
// body model. Residual blocks [ē_p; ē_θ; ē_v; ē_ω]:
//   ē_p = Rᵀ m (p₊ − p − v Δt + ½ g e₃ Δt²) − ½ T Δt²
//   ē_θ = Log(Rᵀ R₊) − ω Δt
//   ē_v = Rᵀ m (v₊ − v + g e₃ Δt) − T Δt − [D Rᵀ v Δt with drag]
//   ē_ω = I_b (ω₊ − ω) − (M − ω × I_b ω) Δt
// with [T; M] the body wrench allocated from u. The residual vanishes exactly
// when x_{i+1} = propagate(x_i, u_i). Noise comes from the per-rotor thrust
// noise pushed through the allocation geometry (process_covariances).
class DynamicsFactor : public fgo::Factor {
 public:
  DynamicsFactor(fgo::Key state_i, fgo::Key input_i, fgo::Key state_i1,
                 const QuadParams& params, double dt, bool include_drag);

  Eigen::VectorXd error(const fgo::Values& v) const override;
  std::vector<Eigen::MatrixXd> jacobians(const fgo::Values& v) const override;

 private:
  QuadParams params_;
  double dt_;
  bool include_drag_;
};

}  // namespace jpcm
