#pragma once

#include "jpcm/fgo/factor.hpp"
#include "jpcm/state.hpp"

namespace jpcm {

// Relative pose from timestamp l to l+1 with its covariance, blocks
// [rotation; translation] in the pose tangent order.
struct RelativePoseMeasurement {
  Pose3 T;
  Mat6 cov = Mat6::Identity();
};

// Binary factor between consecutive historical states:
//   r = pose_log( T_meas⁻¹ · (T_l⁻¹ · T_{l+1}) )
// Zero iff the estimated relative pose equals the measurement. Velocity and
// angular-rate columns are zero; the residual is invariant to a common world
// transform applied to both states.
class RelativePoseFactor : public fgo::Factor {
 public:
  RelativePoseFactor(fgo::Key key_l, fgo::Key key_l1,
                     RelativePoseMeasurement meas);

  Eigen::VectorXd error(const fgo::Values& v) const override;
  std::vector<Eigen::MatrixXd> jacobians(const fgo::Values& v) const override;

 private:
  RelativePoseMeasurement meas_;
};

}  // namespace jpcm
