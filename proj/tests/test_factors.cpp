#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "jpcm/factors.hpp"
#include "jpcm/fgo/numeric.hpp"
#include "jpcm/quad_model.hpp"
#include "test_util.hpp"

using namespace jpcm;
using fgo::input_key;
using fgo::state_key;

namespace {

State random_state(std::mt19937& rng, double pos, double ang, double vel,
                   double rate) {
  State x;
  x.p = testing::random_ball(rng, pos);
  x.R = testing::random_rotation(rng, ang);
  x.v = testing::random_ball(rng, vel);
  x.omega = testing::random_ball(rng, rate);
  return x;
}

Vec12 random_tangent(std::mt19937& rng, double radius) {
  Vec12 d;
  d << testing::random_ball(rng, radius), testing::random_ball(rng, radius),
      testing::random_ball(rng, radius), testing::random_ball(rng, radius);
  return d;
}

RotorSpeeds random_speeds(std::mt19937& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  return RotorSpeeds(u(rng), u(rng), u(rng), u(rng));
}

// Observation sigmas used throughout the simulation study, blocks
// [p, θ, v, ω].
Vec12 observation_sigmas() {
  Vec12 s;
  s << 0.2 * Vec3::Ones(), 0.03 * Vec3::Ones(), 0.05 * Vec3::Ones(),
      0.001 * Vec3::Ones();
  return s;
}

fgo::NoiseModel stage_noise() {
  Eigen::VectorXd s(9);
  s << 0.03 * Vec3::Ones(), 0.3 * Vec3::Ones(), 3.0 * Vec3::Ones();
  return fgo::NoiseModel::from_sigmas(s);
}

}  // namespace

TEST_CASE("absolute factor residual and whitened cost") {
  std::mt19937 rng(7);
  AbsoluteObservation obs;
  obs.z = random_state(rng, 2.0, 1.0, 1.0, 0.5);
  obs.sigmas = observation_sigmas();
  const AbsoluteStateFactor f(state_key(0), obs);

  fgo::Values v;
  v.insert(state_key(0), obs.z);
  CHECK(f.error(v).norm() < 1e-15);
  CHECK(f.cost(v) == 0.0);

  // A pure position offset lands in the first block untouched.
  AbsoluteObservation origin;
  origin.sigmas = observation_sigmas();
  const AbsoluteStateFactor f0(state_key(0), origin);
  State x;
  x.p = Vec3(0.2, 0.0, 0.0);
  fgo::Values v2;
  v2.insert(state_key(0), x);
  const Eigen::VectorXd r = f0.error(v2);
  CHECK(r(0) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(r.tail<11>().norm() == 0.0);
  // One sigma of position error costs one half.
  CHECK(f0.cost(v2) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("absolute factor reports a half-turn rotation residual") {
  AbsoluteObservation obs;
  obs.sigmas = observation_sigmas();
  const AbsoluteStateFactor f(state_key(0), obs);
  State x;
  x.R = Rot3::exp(Vec3(M_PI, 0, 0));
  fgo::Values v;
  v.insert(state_key(0), x);
  CHECK_THROWS_AS(f.error(v), std::domain_error);
}

TEST_CASE("absolute factor jacobian matches finite differences") {
  std::mt19937 rng(11);
  double worst = 0.0;
  for (int i = 0; i < 60; ++i) {
    AbsoluteObservation obs;
    obs.z = random_state(rng, 2.0, 1.2, 2.0, 1.0);
    obs.sigmas = observation_sigmas();
    const AbsoluteStateFactor f(state_key(0), obs);
    fgo::Values v;
    v.insert(state_key(0), obs.z.retract(random_tangent(rng, 0.3)));
    worst = std::max(worst, fgo::max_jacobian_error(f, v));
  }
  CHECK(worst < 1e-5);
}

TEST_CASE("relative factor zero case and translation sign") {
  std::mt19937 rng(13);
  for (int i = 0; i < 20; ++i) {
    const State xl = random_state(rng, 2.0, 1.0, 2.0, 1.0);
    RelativePoseMeasurement m;
    m.T = Pose3(testing::random_rotation(rng, 0.4),
                testing::random_ball(rng, 0.5));
    State xl1 = random_state(rng, 0.0, 0.0, 2.0, 1.0);
    const Pose3 Tl1 = xl.pose() * m.T;
    xl1.p = Tl1.translation();
    xl1.R = Tl1.rotation();

    const RelativePoseFactor f(state_key(0), state_key(1), m);
    fgo::Values v;
    v.insert(state_key(0), xl);
    v.insert(state_key(1), xl1);
    CHECK(f.error(v).norm() < 1e-12);
  }

  // Identity states, measured translation of 0.1 m: the residual carries the
  // unmade motion with a minus sign.
  RelativePoseMeasurement m;
  m.T = Pose3(Rot3(), Vec3(0.1, 0, 0));
  const RelativePoseFactor f(state_key(0), state_key(1), m);
  fgo::Values v;
  v.insert(state_key(0), State{});
  v.insert(state_key(1), State{});
  const Eigen::VectorXd r = f.error(v);
  CHECK(r.head<3>().norm() == 0.0);
  CHECK(r(3) == doctest::Approx(-0.1).epsilon(1e-14));
  CHECK(std::abs(r(4)) < 1e-15);
  CHECK(std::abs(r(5)) < 1e-15);
}

TEST_CASE("relative factor is invariant to a common world transform") {
  std::mt19937 rng(17);
  for (int i = 0; i < 30; ++i) {
    State xl = random_state(rng, 2.0, 1.0, 2.0, 1.0);
    State xl1 = random_state(rng, 2.0, 1.0, 2.0, 1.0);
    RelativePoseMeasurement m;
    m.T = xl.pose().inverse() * xl1.pose() * Pose3::exp(
              (Vec6() << testing::random_ball(rng, 0.2),
               testing::random_ball(rng, 0.2)).finished());
    const RelativePoseFactor f(state_key(0), state_key(1), m);

    fgo::Values v;
    v.insert(state_key(0), xl);
    v.insert(state_key(1), xl1);
    const Eigen::VectorXd before = f.error(v);

    const Pose3 g(testing::random_rotation(rng, 1.0),
                  testing::random_ball(rng, 5.0));
    for (State* x : {&xl, &xl1}) {
      x->p = g.rotation().rotate(x->p) + g.translation();
      x->R = g.rotation() * x->R;
    }
    fgo::Values vg;
    vg.insert(state_key(0), xl);
    vg.insert(state_key(1), xl1);
    CHECK((f.error(vg) - before).norm() < 1e-12);
  }
}

TEST_CASE("relative factor jacobians match finite differences") {
  std::mt19937 rng(19);
  double worst = 0.0;
  for (int i = 0; i < 60; ++i) {
    const State xl = random_state(rng, 2.0, 1.0, 2.0, 1.0);
    const State xl1 = random_state(rng, 2.0, 1.0, 2.0, 1.0);
    RelativePoseMeasurement m;
    m.T = xl.pose().inverse() * xl1.pose() * Pose3::exp(
              (Vec6() << testing::random_ball(rng, 0.3),
               testing::random_ball(rng, 0.3)).finished());
    m.cov = 0.03 * 0.03 * Mat6::Identity();
    const RelativePoseFactor f(state_key(0), state_key(1), m);
    fgo::Values v;
    v.insert(state_key(0), xl);
    v.insert(state_key(1), xl1);
    worst = std::max(worst, fgo::max_jacobian_error(f, v));
  }
  CHECK(worst < 1e-5);
}

TEST_CASE("dynamics factor vanishes on propagated pairs") {
  std::mt19937 rng(23);
  for (const bool drag : {false, true}) {
    QuadParams params;
    if (drag) params.drag = 0.3 * Mat3::Identity();
    const double dt = 0.01;
    for (int i = 0; i < 100; ++i) {
      const State xi = random_state(rng, 2.0, 1.5, 5.0, 3.0);
      const RotorSpeeds u = random_speeds(rng, 12000.0, 18000.0);
      const State xj = propagate(xi, u, params, dt, drag);

      const DynamicsFactor f(state_key(0), input_key(0), state_key(1), params,
                             dt, drag);
      fgo::Values v;
      v.insert(state_key(0), xi);
      v.insert(input_key(0), Eigen::VectorXd(u));
      v.insert(state_key(1), xj);
      CHECK(f.error(v).norm() < 1e-12);
    }
  }
}

TEST_CASE("dynamics factor position block isolates a position offset") {
  QuadParams params;
  const double dt = 0.01;
  const RotorSpeeds u = RotorSpeeds::Constant(params.hover_speed());
  const State hover;
  State next = propagate(hover, u, params, dt, false);

  const DynamicsFactor f(state_key(0), input_key(0), state_key(1), params, dt,
                         false);
  fgo::Values v;
  v.insert(state_key(0), hover);
  v.insert(input_key(0), Eigen::VectorXd(u));
  v.insert(state_key(1), next);
  CHECK(f.error(v).norm() < 1e-12);

  const double eps = 0.01;
  next.p += Vec3(eps, 0, 0);
  fgo::Values v2;
  v2.insert(state_key(0), hover);
  v2.insert(input_key(0), Eigen::VectorXd(u));
  v2.insert(state_key(1), next);
  const Eigen::VectorXd r = f.error(v2);
  CHECK(r(0) == doctest::Approx(params.mass * eps).epsilon(1e-12));
  CHECK(r.tail<11>().norm() < 1e-12);
}

TEST_CASE("dynamics jacobians match finite differences near hover") {
  std::mt19937 rng(29);
  QuadParams params;
  const double dt = 0.01;
  std::uniform_real_distribution<double> du(-500.0, 500.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const State xi = random_state(rng, 1.0, 0.05, 0.1, 0.1);
    RotorSpeeds u = RotorSpeeds::Constant(params.hover_speed());
    for (int j = 0; j < 4; ++j) u[j] += du(rng);
    const State xj =
        propagate(xi, u, params, dt, false).retract(random_tangent(rng, 0.05));

    const DynamicsFactor f(state_key(0), input_key(0), state_key(1), params,
                           dt, false);
    fgo::Values v;
    v.insert(state_key(0), xi);
    v.insert(input_key(0), Eigen::VectorXd(u));
    v.insert(state_key(1), xj);
    worst = std::max(worst, fgo::max_jacobian_error(f, v));
  }
  CHECK(worst < 1e-5);
}

TEST_CASE("dynamics jacobians match finite differences on aggressive states") {
  std::mt19937 rng(31);
  QuadParams params;
  params.drag = 0.3 * Mat3::Identity();
  const double dt = 0.01;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const State xi = random_state(rng, 3.0, 2.5, 5.0, 3.0);
    const RotorSpeeds u = random_speeds(rng, 12000.0, 18000.0);
    const State xj =
        propagate(xi, u, params, dt, true).retract(random_tangent(rng, 0.1));

    const DynamicsFactor f(state_key(0), input_key(0), state_key(1), params,
                           dt, true);
    fgo::Values v;
    v.insert(state_key(0), xi);
    v.insert(input_key(0), Eigen::VectorXd(u));
    v.insert(state_key(1), xj);
    worst = std::max(worst, fgo::max_jacobian_error(f, v));
  }
  CHECK(worst < 1e-5);
}

TEST_CASE("reference factor residual ordering and weight balance") {
  ReferencePoint ref;
  ref.p = Vec3(1, 2, 3);
  ref.v = Vec3(0.5, 0, 0);
  ref.R = Rot3::exp(Vec3(0, 0, 0.3));

  State x;
  x.p = ref.p;
  x.v = ref.v;
  x.R = ref.R;
  const ReferenceFactor f(state_key(0), ref, stage_noise());
  fgo::Values v;
  v.insert(state_key(0), x);
  CHECK(f.error(v).norm() < 1e-15);

  x.p += Vec3(0, 0.1, 0);
  fgo::Values v2;
  v2.insert(state_key(0), x);
  const Eigen::VectorXd r = f.error(v2);
  CHECK(r(1) == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(r.norm() == doctest::Approx(0.1).epsilon(1e-12));

  // One position sigma and one velocity sigma carry the same whitened cost.
  State xp;
  xp.p = Vec3(0.03, 0, 0);
  State xv;
  xv.v = Vec3(0.3, 0, 0);
  ReferencePoint origin;
  const ReferenceFactor f0(state_key(0), origin, stage_noise());
  fgo::Values vp, vv;
  vp.insert(state_key(0), xp);
  vv.insert(state_key(0), xv);
  CHECK(f0.cost(vp) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(f0.cost(vp) == doctest::Approx(f0.cost(vv)).epsilon(1e-12));
}

TEST_CASE("reference factor jacobians match finite differences") {
  std::mt19937 rng(37);
  double worst = 0.0;
  for (int i = 0; i < 60; ++i) {
    ReferencePoint ref;
    ref.p = testing::random_ball(rng, 2.0);
    ref.v = testing::random_ball(rng, 3.0);
    ref.R = testing::random_rotation(rng, 1.2);
    const ReferenceFactor f(state_key(0), ref, stage_noise());
    fgo::Values v;
    v.insert(state_key(0), random_state(rng, 2.0, 1.2, 3.0, 1.0));
    worst = std::max(worst, fgo::max_jacobian_error(f, v));
  }
  CHECK(worst < 1e-5);
}

TEST_CASE("rate factor arithmetic and whitening") {
  const InputRateFactor f(input_key(0), input_key(1), 1000.0);
  fgo::Values v;
  v.insert(input_key(0), Eigen::VectorXd(RotorSpeeds::Constant(15000.0)));
  v.insert(input_key(1), Eigen::VectorXd(RotorSpeeds::Constant(15000.0)));
  CHECK(f.error(v).norm() == 0.0);

  fgo::Values v2;
  v2.insert(input_key(0),
            Eigen::VectorXd(RotorSpeeds(15100.0, 15000.0, 15000.0, 15000.0)));
  v2.insert(input_key(1), Eigen::VectorXd(RotorSpeeds::Constant(15000.0)));
  const Eigen::VectorXd r = f.error(v2);
  CHECK(r(0) == doctest::Approx(100.0).epsilon(1e-14));
  // 100 units of change whiten to 0.1 at sigma 1000.
  CHECK(f.noise().whiten(r)(0) == doctest::Approx(0.1).epsilon(1e-14));
  // Linear residual: a wide probe step keeps the check roundoff-free at
  // actuator-unit magnitudes.
  CHECK(fgo::max_jacobian_error(f, v2, 1e-2) < 1e-8);
}

TEST_CASE("limit factor branches and one-sided slopes") {
  const InputLimits lim;
  const InputLimitFactor f(input_key(0), lim);

  fgo::Values interior;
  interior.insert(input_key(0), Eigen::VectorXd(RotorSpeeds::Constant(15000)));
  CHECK(f.error(interior).norm() == 0.0);
  CHECK(f.jacobians(interior)[0].norm() == 0.0);

  fgo::Values edges;
  edges.insert(input_key(0),
               Eigen::VectorXd(RotorSpeeds(12050.0, 12100.0, 18000.0, 17900.0)));
  const Eigen::VectorXd r = f.error(edges);
  CHECK(r(0) == doctest::Approx(50.0).epsilon(1e-14));
  CHECK(r(1) == 0.0);  // exactly at the lower band edge
  CHECK(r(2) == doctest::Approx(100.0).epsilon(1e-14));
  CHECK(r(3) == 0.0);  // exactly at the upper band edge
  const Eigen::MatrixXd J = f.jacobians(edges)[0];
  CHECK(J(0, 0) == -1.0);
  CHECK(J(1, 1) == 0.0);
  CHECK(J(2, 2) == 1.0);
  CHECK(J(3, 3) == 0.0);
  // At sigma 10: ½((50/10)² + (100/10)²) = 62.5.
  CHECK(f.cost(edges) == doctest::Approx(62.5).epsilon(1e-12));

  // Away from the band edges the one-sided slope is the true derivative.
  fgo::Values away;
  away.insert(input_key(0),
              Eigen::VectorXd(RotorSpeeds(12050.0, 15000.0, 18000.0, 16000.0)));
  CHECK(fgo::max_jacobian_error(f, away, 1e-2) < 1e-8);
}

TEST_CASE("whitened cost is invariant to joint residual and sigma scaling") {
  std::mt19937 rng(41);
  for (int i = 0; i < 10; ++i) {
    const Vec3 dir = testing::random_ball(rng, 1.0);
    for (const double scale : {10.0, 0.25}) {
      AbsoluteObservation a;
      a.sigmas = observation_sigmas();
      AbsoluteObservation b;
      b.sigmas = scale * a.sigmas;

      State xa;
      xa.p = dir;
      State xb;
      xb.p = scale * dir;

      fgo::Values va, vb;
      va.insert(state_key(0), xa);
      vb.insert(state_key(0), xb);
      const AbsoluteStateFactor fa(state_key(0), a);
      const AbsoluteStateFactor fb(state_key(0), b);
      CHECK(fa.cost(va) == doctest::Approx(fb.cost(vb)).epsilon(1e-12));
    }
  }
}
