#pragma once

#include <memory>
#include <vector>

#include "jpcm/fgo/key.hpp"
#include "jpcm/fgo/noise.hpp"
#include "jpcm/fgo/values.hpp"

namespace jpcm::fgo {

// Residual block r(x) with Gaussian noise; contributes ½‖Σ^{-1/2} r‖² to the
// total cost. Jacobians are with respect to each key's tangent perturbation
// (right perturbation for rotations) and must match central finite
// differences: that is what check-jacobians and the factor tests enforce.
class Factor {
 public:
  Factor(std::vector<Key> keys, NoiseModel noise)
      : keys_(std::move(keys)), noise_(std::move(noise)) {}
  virtual ~Factor() = default;

  const std::vector<Key>& keys() const { return keys_; }
  const NoiseModel& noise() const { return noise_; }
  int dim() const { return noise_.dim(); }

  virtual Eigen::VectorXd error(const Values& v) const = 0;
  virtual std::vector<Eigen::MatrixXd> jacobians(const Values& v) const = 0;

  double cost(const Values& v) const {
    return 0.5 * noise_.whiten(error(v)).squaredNorm();
  }

 private:
  std::vector<Key> keys_;
  NoiseModel noise_;
};

using FactorPtr = std::shared_ptr<const Factor>;

}  // namespace jpcm::fgo
