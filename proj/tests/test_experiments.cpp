#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "jpcm/experiments/cases.hpp"
#include "jpcm/experiments/config.hpp"
#include "jpcm/experiments/csv.hpp"
#include "jpcm/experiments/metrics.hpp"
#include "jpcm/lie.hpp"

using namespace jpcm;
using namespace jpcm::experiments;

namespace {

// Synthetic log with a prescribed position error track and exact attitude.
sim::RunLog synthetic_log(int n_steps, double dt,
                          const std::function<Vec3(double)>& pos_err) {
  sim::RunLog log;
  log.dt = dt;
  for (int k = 0; k < n_steps; ++k) {
    sim::StepRecord rec;
    rec.t = k * dt;
    rec.ref.p = Vec3(1.0, 2.0, 3.0);
    rec.ref.R = Rot3::exp(Vec3(0.1, 0.0, 0.2));
    rec.truth.p = rec.ref.p + pos_err(rec.t);
    rec.truth.R = rec.ref.R;
    log.steps.push_back(rec);
  }
  return log;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("rmse of exact tracking is zero and of a constant offset is the offset") {
  const auto zero = synthetic_log(300, 0.01, [](double) { return Vec3::Zero(); });
  const RmseReport r0 = compute_rmse(zero, 1.0);
  CHECK(r0.pos_rmse.norm() == 0.0);
  CHECK(r0.rot_rmse.norm() < 1e-12);  // RᵀR misses identity by rounding

  const auto off =
      synthetic_log(300, 0.01, [](double) { return Vec3(0.1, 0.0, 0.0); });
  const RmseReport r1 = compute_rmse(off, 1.0);
  CHECK(r1.pos_rmse(0) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(r1.pos_rmse(1) == 0.0);
  CHECK(r1.pos_rmse(2) == 0.0);
}

TEST_CASE("rmse of a sinusoidal error is its amplitude over sqrt(2)") {
  // Whole number of periods past the warm-up cut keeps the discrete RMS exact.
  const double amp = 0.37;
  const double freq = 2.0;  // Hz
  const auto log = synthetic_log(301, 0.01, [&](double t) {
    return Vec3(amp * std::sin(2.0 * M_PI * freq * t), 0.0, 0.0);
  });
  const RmseReport r = compute_rmse(log, 1.0);
  CHECK(r.pos_rmse(0) ==
        doctest::Approx(amp / std::numbers::sqrt2).epsilon(0.01));
}

TEST_CASE("rmse on a rotation offset lands in the rotation components") {
  auto log = synthetic_log(200, 0.01, [](double) { return Vec3::Zero(); });
  for (auto& s : log.steps) {
    s.truth.R = Rot3(s.ref.R.matrix() * exp_so3(Vec3(0.0, 0.05, 0.0)));
  }
  const RmseReport r = compute_rmse(log, 1.0);
  CHECK(r.rot_rmse(1) == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(r.rot_rmse(0) < 1e-12);
  CHECK(r.pos_rmse.norm() == 0.0);
}

TEST_CASE("rmse demands samples past the warm-up window") {
  const auto log = synthetic_log(50, 0.01, [](double) { return Vec3::Zero(); });
  CHECK_THROWS_AS(compute_rmse(log, 1.0), std::invalid_argument);
}

TEST_CASE("recovery time finds the last exceedance of the tube") {
  // Error norm decays linearly from 0.5 at t=0.5 to 0 at t=2.5, so it crosses
  // 0.05 at t = 2.3.
  const auto log = synthetic_log(400, 0.01, [](double t) -> Vec3 {
    if (t <= 0.5) return Vec3::Zero();
    const double e = std::max(0.0, 0.5 - 0.25 * (t - 0.5));
    return Vec3(e, 0.0, 0.0);
  });
  const auto rt = recovery_time(log, 0.5, 0.05);
  REQUIRE(rt.has_value());
  CHECK(*rt == doctest::Approx(2.30 - 0.5).epsilon(0.02));

  // Never settles: error stays above the tube until the end.
  const auto bad = synthetic_log(400, 0.01, [](double t) -> Vec3 {
    return t > 0.5 ? Vec3(0.2, 0.0, 0.0) : Vec3::Zero();
  });
  CHECK_FALSE(recovery_time(bad, 0.5, 0.05).has_value());

  // A late excursion resets the clock to the final re-entry.
  const auto wobble = synthetic_log(400, 0.01, [](double t) -> Vec3 {
    if (t > 0.5 && t < 1.0) return Vec3(0.3, 0.0, 0.0);
    if (t > 3.0 && t < 3.2) return Vec3(0.3, 0.0, 0.0);
    return Vec3::Zero();
  });
  const auto rt2 = recovery_time(wobble, 0.5, 0.05);
  REQUIRE(rt2.has_value());
  CHECK(*rt2 == doctest::Approx(3.2 - 0.5).epsilon(0.02));
}

TEST_CASE("config round-trips and rejects unknown keys") {
  ScenarioConfig cfg;
  cfg.scenario.duration = 7.5;
  cfg.scenario.params.tc = 0.025;
  cfg.scenario.horizon.M = 10;
  cfg.scenario.weights.q_k = Weights::stage_sigmas(0.05, 0.4, 2.0);
  cfg.methods = {"jpcm", "jpcm_sw"};
  cfg.seeds = {3, 4};
  sim::Disturbance d;
  d.time = 0.5;
  d.kind = sim::DisturbanceKind::kDisplacement;
  d.vector = Vec3(0.0, 0.30, -0.40);
  cfg.scenario.disturbances.push_back(d);

  const std::string text = serialize_config(cfg);
  const ScenarioConfig back = parse_config(text);
  CHECK(serialize_config(back) == text);
  CHECK(back.scenario.duration == 7.5);
  CHECK(back.scenario.params.tc == 0.025);
  CHECK(back.scenario.horizon.M == 10);
  CHECK(back.scenario.weights.q_k(0) == 0.05);
  CHECK(back.methods == cfg.methods);
  CHECK(back.seeds == cfg.seeds);
  REQUIRE(back.scenario.disturbances.size() == 1);
  CHECK(back.scenario.disturbances[0].vector.isApprox(d.vector));

  CHECK_THROWS_AS(parse_config("nonsense.key = 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("duration 20\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("duration = fast\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("methods = warp_drive\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("disturbance.0.kind = sharknado\n"),
                  std::invalid_argument);

  // Comments and blank lines are fine; overrides apply on top.
  ScenarioConfig base = parse_config("# comment\n\nduration = 12 # trailing\n");
  CHECK(base.scenario.duration == 12.0);
  apply_override(base, "circle.speed=4.5");
  CHECK(base.scenario.circle.speed == 4.5);
  CHECK_THROWS_AS(apply_override(base, "no_equals_sign"), std::invalid_argument);
}

TEST_CASE("method names map to controller kinds and observation policy") {
  CHECK(method_kind("mpc_pre") == ControllerKind::kMpc);
  CHECK(method_kind("mpc") == ControllerKind::kMpc);
  CHECK(method_kind("jpcm") == ControllerKind::kJpcm);
  CHECK(method_kind("jpcm_sw") == ControllerKind::kJpcmSw);
  CHECK(method_kind("jpcm_drag") == ControllerKind::kJpcmDrag);
  CHECK_THROWS_AS(method_kind("fgo"), std::invalid_argument);

  CHECK(method_observes_truth("mpc_pre"));
  CHECK_FALSE(method_observes_truth("mpc"));

  ScenarioConfig cfg;
  const sim::Scenario pre = method_scenario(cfg, "mpc_pre");
  CHECK(pre.noise.obs_pos == 0.0);
  CHECK(pre.noise.obs_rot == 0.0);
  CHECK(pre.noise.thrust_sigma == cfg.scenario.noise.thrust_sigma);
  const sim::Scenario sw = method_scenario(cfg, "jpcm_sw");
  CHECK(sw.horizon.M == 10);
  const sim::Scenario j = method_scenario(cfg, "jpcm");
  CHECK(j.horizon.M == 1);
}

TEST_CASE("runlog csv carries the documented schema and parses back") {
  ScenarioConfig cfg;
  cfg.scenario.duration = 1.2;
  const sim::RunLog log = run_single(cfg, "mpc_pre", 1);
  CHECK(log.config_hash != 0);

  std::stringstream ss;
  write_runlog_csv(ss, log);
  const CsvTable table = read_csv(ss);

  CHECK(table.header.size() == 33);
  CHECK(table.header.front() == "t");
  CHECK(table.header.back() == "event");
  CHECK(table.col("p_true_x") == 1);
  CHECK(table.col("u_cmd_1") == 22);
  CHECK(table.col("iters") == 30);
  CHECK(table.rows.size() == log.steps.size());

  // Exact round-trip of a sampled value through %.17g.
  const std::size_t c = table.col("p_true_y");
  const double reparsed = std::stod(table.rows[17][c]);
  CHECK(reparsed == log.steps[17].truth.p(1));
}

TEST_CASE("case runner writes summary whose aggregates match the runs") {
  const std::string out = "test_case_out";
  std::filesystem::remove_all(out);
  ScenarioConfig cfg;
  cfg.scenario.duration = 2.0;
  cfg.seeds = {1, 2, 3};

  const CaseResult result = run_case("case1", cfg, out);
  // 3 methods x (3 seeds + mean + std).
  CHECK(result.rows.size() == 15);
  CHECK(std::filesystem::exists(result.summary_path));
  CHECK(std::filesystem::exists(std::filesystem::path(out) /
                                "case1_mpc_pre_seed1.csv"));

  // Aggregate rows recompute from the per-run rows within 1e-12.
  for (const std::string& method : {"mpc_pre", "mpc", "jpcm"}) {
    Vec3 sum = Vec3::Zero();
    int n = 0;
    const CaseRow* mean_row = nullptr;
    for (const CaseRow& r : result.rows) {
      if (r.method != method) continue;
      if (r.seed == "mean") {
        mean_row = &r;
      } else if (r.seed != "std" && r.has_rmse) {
        sum += r.pos_rmse;
        ++n;
      }
    }
    REQUIRE(mean_row != nullptr);
    REQUIRE(n == 3);
    CHECK((sum / n - mean_row->pos_rmse).norm() < 1e-12);
  }

  // Determinism: a second run of the same case produces byte-identical CSVs.
  const std::string out2 = "test_case_out2";
  std::filesystem::remove_all(out2);
  const CaseResult again = run_case("case1", cfg, out2);
  CHECK(slurp(result.summary_path) == slurp(again.summary_path));
  CHECK(slurp(out + "/case1_jpcm_seed2.csv") == slurp(out2 + "/case1_jpcm_seed2.csv"));

  CHECK_THROWS_AS(run_case("case9", cfg, out), std::invalid_argument);
  std::filesystem::remove_all(out);
  std::filesystem::remove_all(out2);
}

TEST_CASE("summary header is stable") {
  CHECK(summary_header() ==
        "case,method,param,seed,diverged,diverged_at,"
        "pos_rmse_x,pos_rmse_y,pos_rmse_z,"
        "rot_rmse_x,rot_rmse_y,rot_rmse_z,"
        "recovery_time");
  CHECK(runlog_header().substr(0, 2) == "t,");
}

TEST_CASE("rmse is insensitive to the warm-up cut on a settled run") {
  ScenarioConfig cfg;
  cfg.scenario.duration = 6.0;
  const sim::RunLog log = run_single(cfg, "mpc_pre", 2);
  REQUIRE_FALSE(log.diverged);
  const RmseReport a = compute_rmse(log, 1.0);
  const RmseReport b = compute_rmse(log, 2.0);
  for (int i = 0; i < 3; ++i) {
    CHECK(b.pos_rmse(i) == doctest::Approx(a.pos_rmse(i)).epsilon(0.40));
  }
}

TEST_CASE("recovery case reports re-entry times") {
  ScenarioConfig cfg;
  cfg.scenario.duration = 6.0;
  cfg.seeds = {1};
  const std::string out = "test_recovery_out";
  std::filesystem::remove_all(out);
  const CaseResult result = run_case("recovery", cfg, out);

  int with_recovery = 0;
  for (const CaseRow& r : result.rows) {
    if (r.seed == "mean" || r.seed == "std") continue;
    REQUIRE_FALSE(r.diverged.value_or(0.0) == 1.0);
    if (r.recovery) {
      ++with_recovery;
      CHECK(*r.recovery > 0.0);
      CHECK(*r.recovery < 5.0);
    }
  }
  CHECK(with_recovery == 2);  // mpc and jpcm, one seed each
  std::filesystem::remove_all(out);
}
