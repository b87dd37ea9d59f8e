#pragma once

#include "jpcm/fgo/factor.hpp"
#include "jpcm/state.hpp"

namespace jpcm {

// One sample of the planned trajectory. u is the feed-forward rotor speed,
// used as the initial guess for input variables.
struct ReferencePoint {
  Vec3 p = Vec3::Zero();
  Rot3 R;
  Vec3 v = Vec3::Zero();
  RotorSpeeds u = RotorSpeeds::Zero();
};

// Unary factor pulling a predicted state toward the reference:
//   r = [p − p^r; v − v^r; Log(Rᵀ R^r)]
// Angular rate is not referenced. The noise model carries the stage weight
// (running or terminal).
class ReferenceFactor : public fgo::Factor {
 public:
  ReferenceFactor(fgo::Key key, ReferencePoint ref, fgo::NoiseModel noise);

  Eigen::VectorXd error(const fgo::Values& v) const override;
  std::vector<Eigen::MatrixXd> jacobians(const fgo::Values& v) const override;

 private:
  ReferencePoint ref_;
};

}  // namespace jpcm
