#include "jpcm/fgo/values.hpp"

#include <stdexcept>

namespace jpcm::fgo {

void Values::insert(Key k, const State& x) { map_[k] = x; }
void Values::insert(Key k, const Eigen::VectorXd& v) {
  if (v.size() == 0) {
    throw std::invalid_argument("Values: empty vector for " + to_string(k));
  }
  map_[k] = v;
}

const Values::Slot& Values::at(Key k) const {
  const auto it = map_.find(k);
  if (it == map_.end()) {
    throw std::invalid_argument("Values: missing key " + to_string(k));
  }
  return it->second;
}

const State& Values::state(Key k) const {
  const Slot& s = at(k);
  if (!std::holds_alternative<State>(s)) {
    throw std::invalid_argument("Values: " + to_string(k) + " is not a state");
  }
  return std::get<State>(s);
}

const Eigen::VectorXd& Values::vector(Key k) const {
  const Slot& s = at(k);
  if (!std::holds_alternative<Eigen::VectorXd>(s)) {
    throw std::invalid_argument("Values: " + to_string(k) + " is not a vector");
  }
  return std::get<Eigen::VectorXd>(s);
}

int Values::tangent_dim(Key k) const {
  const Slot& s = at(k);
  if (std::holds_alternative<State>(s)) return State::kTangentDim;
  return static_cast<int>(std::get<Eigen::VectorXd>(s).size());
}

void Values::retract_in_place(Key k,
                              const Eigen::Ref<const Eigen::VectorXd>& delta) {
  auto it = map_.find(k);
  if (it == map_.end()) {
    throw std::invalid_argument("Values: missing key " + to_string(k));
  }
  if (delta.size() != tangent_dim(k)) {
    throw std::invalid_argument("Values: retract dimension mismatch at " +
                                to_string(k));
  }
  if (std::holds_alternative<State>(it->second)) {
    it->second = std::get<State>(it->second).retract(delta);
  } else {
    std::get<Eigen::VectorXd>(it->second) += delta;
  }
}

std::vector<Key> Values::keys() const {
  std::vector<Key> out;
  out.reserve(map_.size());
  for (const auto& [k, v] : map_) out.push_back(k);
  return out;
}

}  // namespace jpcm::fgo
