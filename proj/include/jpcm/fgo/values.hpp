#pragma once

#include <Eigen/Core>
#include <map>
#include <variant>
#include <vector>

#include "jpcm/fgo/key.hpp"
#include "jpcm/state.hpp"

namespace jpcm::fgo {

// Variable assignment. Two value kinds: full navigation states (tangent
// dimension 12, manifold retraction) and flat vectors (rotor-speed inputs and
// test problems, additive retraction).
class Values {
 public:
  void insert(Key k, const State& x);
  void insert(Key k, const Eigen::VectorXd& v);

  bool has(Key k) const { return map_.count(k) > 0; }
  std::size_t size() const { return map_.size(); }

  const State& state(Key k) const;
  const Eigen::VectorXd& vector(Key k) const;

  int tangent_dim(Key k) const;
  void retract_in_place(Key k, const Eigen::Ref<const Eigen::VectorXd>& delta);

  std::vector<Key> keys() const;  // sorted

 private:
  using Slot = std::variant<State, Eigen::VectorXd>;
  const Slot& at(Key k) const;
  std::map<Key, Slot> map_;
};

}  // namespace jpcm::fgo
