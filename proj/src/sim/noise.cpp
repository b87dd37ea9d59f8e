#include "jpcm/sim/noise.hpp"

#include "jpcm/lie.hpp"

namespace jpcm::sim {
namespace {

Vec3 gaussian3(double sigma, std::mt19937_64& rng) {
  if (sigma == 0.0) return Vec3::Zero();
  std::normal_distribution<double> n(0.0, sigma);
  return {n(rng), n(rng), n(rng)};
}

}  // namespace

Vec12 NoiseConfig::observation_sigmas() const {
  Vec12 s;
  s.segment<3>(0).setConstant(obs_pos);
  s.segment<3>(3).setConstant(obs_rot);
  s.segment<3>(6).setConstant(obs_vel);
  s.segment<3>(9).setConstant(obs_omega);
  return s;
}

std::mt19937_64 make_stream(std::uint64_t seed, NoisePurpose purpose) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffULL),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(purpose)};
  return std::mt19937_64(seq);
}

AbsoluteObservation sample_absolute(const State& truth, const NoiseConfig& noise,
                                    std::mt19937_64& rng) {
  AbsoluteObservation obs;
  obs.z = truth;
  obs.z.p += gaussian3(noise.obs_pos, rng);
  obs.z.R = Rot3(truth.R.matrix() * exp_so3(gaussian3(noise.obs_rot, rng)));
  obs.z.v += gaussian3(noise.obs_vel, rng);
  obs.z.omega += gaussian3(noise.obs_omega, rng);
  obs.sigmas = noise.observation_sigmas();
  return obs;
}

RelativePoseMeasurement sample_relative(const State& from, const State& to,
                                        const NoiseConfig& noise,
                                        std::mt19937_64& rng) {
  Vec6 tangent;
  tangent.head<3>() = gaussian3(noise.rel_sigma, rng);
  tangent.tail<3>() = gaussian3(noise.rel_sigma, rng);
  RelativePoseMeasurement meas;
  meas.T = (from.pose().inverse() * to.pose()) * Pose3::exp(tangent);
  meas.cov = noise.rel_sigma * noise.rel_sigma * Mat6::Identity();
  return meas;
}

}  // namespace jpcm::sim
