#pragma once

#include "jpcm/fgo/factor.hpp"
#include "jpcm/state.hpp"

namespace jpcm {

// Actuator bounds with a soft threshold band on each side. sigma sets how
// fast the cost grows once a component enters a band.
struct InputLimits {
  double u_min = 12000.0;
  double u_max = 18000.0;
  double u_thr = 100.0;
  double sigma = 10.0;

  double lower_band() const { return u_min + u_thr; }
  double upper_band() const { return u_max - u_thr; }
};

// Per-component hinge on one input variable:
//   r_j = lower_band − u_j  when u_j is below the lower band   (slope −1)
//   r_j = u_j − upper_band  when u_j is at or above the upper band (slope +1)
//   r_j = 0                 otherwise
// Exactly at a band edge the one-sided derivative is taken as 0.
class InputLimitFactor : public fgo::Factor {
 public:
  InputLimitFactor(fgo::Key key, InputLimits limits);

  Eigen::VectorXd error(const fgo::Values& v) const override;
  std::vector<Eigen::MatrixXd> jacobians(const fgo::Values& v) const override;

 private:
  InputLimits lim_;
};

}  // namespace jpcm
