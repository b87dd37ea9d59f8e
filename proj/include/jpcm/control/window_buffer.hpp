#pragma once

#include <deque>
#include <optional>

#include "jpcm/factors/absolute_factor.hpp"
#include "jpcm/factors/relative_pose_factor.hpp"

namespace jpcm {

struct TimedObservation {
  double t = 0.0;
  AbsoluteObservation obs;
};

// Keeps the last `capacity` absolute observations and the relative pose
// measurements linking consecutive ones, time-ordered, oldest first.
class WindowBuffer {
 public:
  explicit WindowBuffer(int capacity);

  // Appends one observation. rel links the previously newest entry to this
  // one and is required whenever an earlier entry will remain in the buffer.
  void push(double t, const AbsoluteObservation& obs,
            const std::optional<RelativePoseMeasurement>& rel = std::nullopt);

  int capacity() const { return capacity_; }
  int size() const { return static_cast<int>(entries_.size()); }
  bool full() const { return size() == capacity_; }

  const TimedObservation& entry(int j) const;            // j = 0 is oldest
  const RelativePoseMeasurement& relative(int j) const;  // links j to j+1

 private:
  int capacity_;
  std::deque<TimedObservation> entries_;
  std::deque<RelativePoseMeasurement> relatives_;
};

}  // namespace jpcm
