#pragma once

#include "jpcm/fgo/factor.hpp"
#include "jpcm/state.hpp"

namespace jpcm {

// Binary factor restricting the actuator change rate: r = u_t − u_{t+1}.
class InputRateFactor : public fgo::Factor {
 public:
  InputRateFactor(fgo::Key key_t, fgo::Key key_t1, double sigma);

  Eigen::VectorXd error(const fgo::Values& v) const override;
  std::vector<Eigen::MatrixXd> jacobians(const fgo::Values& v) const override;
};

}  // namespace jpcm
