#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "jpcm/fgo/factor.hpp"

namespace jpcm::fgo {

class FactorGraph {
 public:
  void add(FactorPtr f);

  template <typename F, typename... Args>
  void emplace(Args&&... args) {
    add(std::make_shared<const F>(std::forward<Args>(args)...));
  }

  const std::vector<FactorPtr>& factors() const { return factors_; }
  std::size_t size() const { return factors_.size(); }

  // Union of factor keys, sorted by the canonical key order.
  std::vector<Key> variable_keys() const;

  double cost(const Values& v) const;

 private:
  std::vector<FactorPtr> factors_;
};

// Fixed column layout for a graph's variables.
struct Ordering {
  std::vector<Key> keys;     // sorted
  std::vector<int> offsets;  // column offset per key
  std::vector<int> dims;     // tangent dimension per key
  int total_dim = 0;

  int slot_of(Key k) const;  // throws on unknown key
  int offset_of(Key k) const { return offsets[static_cast<std::size_t>(slot_of(k))]; }

  static Ordering make(const FactorGraph& graph, const Values& values);
};

// Whitened dense Jacobian/residual of the whole graph. Row blocks follow
// factor insertion order; columns follow the ordering. cost = ½‖residual‖².
struct Linearization {
  Ordering ordering;
  Eigen::MatrixXd jacobian;
  Eigen::VectorXd residual;
  double cost = 0.0;
};

Linearization linearize(const FactorGraph& graph, const Values& values);

}  // namespace jpcm::fgo
