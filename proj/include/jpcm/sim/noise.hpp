#pragma once

#include <cstdint>
#include <random>

#include "jpcm/factors/absolute_factor.hpp"
#include "jpcm/factors/relative_pose_factor.hpp"
#include "jpcm/state.hpp"

namespace jpcm::sim {

// Standard deviations of the injected sensor and process noise. Zeroing a
// field disables that noise source.
struct NoiseConfig {
  double obs_pos = 0.2;       // m, per axis
  double obs_rot = 0.03;      // rad, per axis
  double obs_vel = 0.05;      // m/s, per axis
  double obs_omega = 0.001;   // rad/s, per axis
  double rel_sigma = 0.03;    // per tangent component of the relative pose
  double thrust_sigma = 0.1;  // N, per rotor
  double omega_sigma = 0.02;  // rad/s, per axis after propagation

  Vec12 observation_sigmas() const;
};

// Independent generator for one noise purpose, derived from the run seed so
// that reordering draws of one purpose never shifts another.
enum class NoisePurpose : std::uint32_t { kProcess = 0, kObservation = 1, kRelative = 2 };

std::mt19937_64 make_stream(std::uint64_t seed, NoisePurpose purpose);

// Observation of a true state with additive noise on position, velocity and
// body rate and a right-perturbed rotation. The attached sigmas describe the
// injected noise; consumers may re-weight.
AbsoluteObservation sample_absolute(const State& truth, const NoiseConfig& noise,
                                    std::mt19937_64& rng);

// Relative pose between two consecutive truth states, right-perturbed in the
// pose tangent. The attached covariance is isotropic at rel_sigma.
RelativePoseMeasurement sample_relative(const State& from, const State& to,
                                        const NoiseConfig& noise,
                                        std::mt19937_64& rng);

}  // namespace jpcm::sim
