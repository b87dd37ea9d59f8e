#pragma once

#include "jpcm/fgo/factor.hpp"
#include "jpcm/state.hpp"

namespace jpcm {

// Full-state measurement with per-component sigmas, blocks [p, θ, v, ω].
struct AbsoluteObservation {
  State z;
  Vec12 sigmas = Vec12::Ones();
};

// Unary factor tying one state to an absolute observation:
//   r = [p − z_p; Log(z_Rᵀ R); v − z_v; ω − z_ω]
class AbsoluteStateFactor : public fgo::Factor {
 public:
  AbsoluteStateFactor(fgo::Key key, AbsoluteObservation obs);

  Eigen::VectorXd error(const fgo::Values& v) const override;
  std::vector<Eigen::MatrixXd> jacobians(const fgo::Values& v) const override;

 private:
  AbsoluteObservation obs_;
};

}  // namespace jpcm
