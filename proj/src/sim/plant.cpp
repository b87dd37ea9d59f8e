#include "jpcm/sim/plant.hpp"

#include "jpcm/quad_model.hpp"

namespace jpcm::sim {

PlantStep plant_step(const State& truth, const RotorSpeeds& u_actual,
                     const RotorSpeeds& u_cmd, const QuadParams& params,
                     const NoiseConfig& noise, double dt, bool include_drag,
                     const Vec3& external_force, std::mt19937_64& rng) {
  PlantStep out;
  out.u_actual = actuator_step(u_actual, u_cmd, params.tc, dt);

  Eigen::Vector4d forces = params.ct * out.u_actual.cwiseProduct(out.u_actual);
  if (noise.thrust_sigma > 0.0) {
    std::normal_distribution<double> n(0.0, noise.thrust_sigma);
    for (int j = 0; j < 4; ++j) forces(j) += n(rng);
  }
  const Eigen::Vector4d tau = force_allocation_matrix(params) * forces;
  BodyWrench w;
  w.thrust = Vec3(0.0, 0.0, tau(0));
  w.torque = tau.tail<3>();
  // A world-frame force enters the body-frame thrust channel so that it acts
  // on both the velocity and the position rows of the step.
  w.thrust += truth.R.unrotate(external_force);

  out.x = propagate(truth, w, params, dt, include_drag);

  if (noise.omega_sigma > 0.0) {
    std::normal_distribution<double> n(0.0, noise.omega_sigma);
    for (int j = 0; j < 3; ++j) out.x.omega(j) += n(rng);
  }
  return out;
}

}  // namespace jpcm::sim
