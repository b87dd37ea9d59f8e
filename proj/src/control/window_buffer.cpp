#include "jpcm/control/window_buffer.hpp"

#include <stdexcept>

namespace jpcm {

WindowBuffer::WindowBuffer(int capacity) : capacity_(capacity) {
  if (capacity < 1) {
    throw std::invalid_argument("WindowBuffer: capacity must be positive");
  }
}

void WindowBuffer::push(double t, const AbsoluteObservation& obs,
                        const std::optional<RelativePoseMeasurement>& rel) {
  if (!entries_.empty() && t <= entries_.back().t) {
    throw std::invalid_argument("WindowBuffer: observations must advance in time");
  }
  const bool needs_rel = capacity_ > 1 && !entries_.empty();
  if (needs_rel && !rel) {
    throw std::invalid_argument("WindowBuffer: missing relative measurement");
  }
  entries_.push_back({t, obs});
  if (needs_rel) relatives_.push_back(*rel);

  while (size() > capacity_) {
    entries_.pop_front();
    if (!relatives_.empty()) relatives_.pop_front();
  }
}

const TimedObservation& WindowBuffer::entry(int j) const {
  if (j < 0 || j >= size()) throw std::out_of_range("WindowBuffer::entry");
  return entries_[static_cast<std::size_t>(j)];
}

const RelativePoseMeasurement& WindowBuffer::relative(int j) const {
  if (j < 0 || j >= static_cast<int>(relatives_.size())) {
    throw std::out_of_range("WindowBuffer::relative");
  }
  return relatives_[static_cast<std::size_t>(j)];
}

}  // namespace jpcm
