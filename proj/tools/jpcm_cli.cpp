// Command-line harness: single runs, experiment matrices, Jacobian
// verification, and plot-data extraction. Exit codes: 0 success, 1 divergence
// where stability was expected (or a failed verification), 2 bad
// configuration, 3 internal error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "jpcm/experiments/cases.hpp"
#include "jpcm/experiments/csv.hpp"
#include "jpcm/factors.hpp"
#include "jpcm/fgo/numeric.hpp"
#include "jpcm/quad_model.hpp"

namespace {

using namespace jpcm;

constexpr int kExitDivergence = 1;
constexpr int kExitBadConfig = 2;
constexpr int kExitInternal = 3;

Vec3 random_vec(std::mt19937& rng, double scale) {
  std::normal_distribution<double> n(0.0, scale);
  return Vec3(n(rng), n(rng), n(rng));
}

State random_state(std::mt19937& rng) {
  State x;
  x.p = random_vec(rng, 1.0);
  x.R = Rot3::exp(random_vec(rng, 0.4));
  x.v = random_vec(rng, 1.0);
  x.omega = random_vec(rng, 0.5);
  return x;
}

// Rotor speeds away from the hinge kinks so central differences stay on one
// side of each piecewise-linear segment.
RotorSpeeds random_speeds_off_kinks(std::mt19937& rng, const InputLimits& lim) {
  std::uniform_real_distribution<double> u(lim.u_min - 400.0, lim.u_max + 400.0);
  RotorSpeeds s;
  for (int i = 0; i < 4; ++i) {
    double v = u(rng);
    while (std::abs(v - lim.lower_band()) < 1.0 ||
           std::abs(v - lim.upper_band()) < 1.0) {
      v = u(rng);
    }
    s(i) = v;
  }
  return s;
}

struct JacobianCheck {
  std::string name;
  double worst = 0.0;
};

int cmd_check_jacobians(int points, double tol) {
  std::mt19937 rng(20240817);
  const QuadParams params;
  const InputLimits limits;
  std::vector<JacobianCheck> checks;

  const auto record = [&checks](const std::string& name, double err) {
    for (auto& c : checks) {
      if (c.name == name) {
        c.worst = std::max(c.worst, err);
        return;
      }
    }
    checks.push_back({name, err});
  };

  for (int i = 0; i < points; ++i) {
    fgo::Values v;
    v.insert(fgo::state_key(0), random_state(rng));
    v.insert(fgo::state_key(1), random_state(rng));
    v.insert(fgo::input_key(0),
             Eigen::VectorXd(random_speeds_off_kinks(rng, limits)));
    v.insert(fgo::input_key(1),
             Eigen::VectorXd(random_speeds_off_kinks(rng, limits)));

    {
      const DynamicsFactor f(fgo::state_key(0), fgo::input_key(0),
                             fgo::state_key(1), params, 0.01, false);
      record("dynamics", fgo::max_jacobian_error(f, v));
    }
    {
      QuadParams dragged = params;
      dragged.drag = 0.3 * Mat3::Identity();
      const DynamicsFactor f(fgo::state_key(0), fgo::input_key(0),
                             fgo::state_key(1), dragged, 0.01, true);
      record("dynamics_drag", fgo::max_jacobian_error(f, v));
    }
    {
      AbsoluteObservation obs;
      obs.z = random_state(rng);
      obs.sigmas = Weights().p_c;
      const AbsoluteStateFactor f(fgo::state_key(0), obs);
      record("absolute", fgo::max_jacobian_error(f, v));
    }
    {
      RelativePoseMeasurement meas;
      meas.T = Pose3::exp((Vec6() << random_vec(rng, 0.3), random_vec(rng, 0.5))
                              .finished());
      meas.cov = 0.03 * 0.03 * Mat6::Identity();
      const RelativePoseFactor f(fgo::state_key(0), fgo::state_key(1), meas);
      record("relative_pose", fgo::max_jacobian_error(f, v));
    }
    {
      ReferencePoint ref;
      ref.p = random_vec(rng, 1.0);
      ref.R = Rot3::exp(random_vec(rng, 0.4));
      ref.v = random_vec(rng, 1.0);
      const ReferenceFactor f(
          fgo::state_key(1), ref,
          fgo::NoiseModel::from_sigmas(Weights().q_k));
      record("reference", fgo::max_jacobian_error(f, v));
    }
    {
      const InputRateFactor f(fgo::input_key(0), fgo::input_key(1), 1000.0);
      record("input_rate", fgo::max_jacobian_error(f, v));
    }
    {
      const InputLimitFactor f(fgo::input_key(0), limits);
      record("input_limit", fgo::max_jacobian_error(f, v));
    }
  }

  bool ok = true;
  for (const auto& c : checks) {
    const bool pass = c.worst < tol;
    ok = ok && pass;
    std::printf("%-14s worst relative error %.3e over %d points  [%s]\n",
                c.name.c_str(), c.worst, points, pass ? "ok" : "FAIL");
  }
  return ok ? 0 : kExitDivergence;
}

int cmd_run(const experiments::ScenarioConfig& cfg, const std::string& method,
            std::uint64_t seed, const std::string& out_path,
            bool allow_divergence) {
  const sim::RunLog log = experiments::run_single(cfg, method, seed);
  if (out_path == "-") {
    experiments::write_runlog_csv(std::cout, log);
  } else {
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw std::invalid_argument("cannot open output file: " + out_path);
    experiments::write_runlog_csv(os, log);
  }
  std::fprintf(stderr, "run: method=%s seed=%llu steps=%zu%s\n", method.c_str(),
               static_cast<unsigned long long>(seed), log.steps.size(),
               log.diverged ? " DIVERGED" : "");
  if (log.diverged && !allow_divergence) return kExitDivergence;
  return 0;
}

int cmd_case(const std::string& case_id, const experiments::ScenarioConfig& cfg,
             const std::string& out_dir) {
  const experiments::CaseResult result =
      experiments::run_case(case_id, cfg, out_dir);
  std::ofstream cfg_os(out_dir + "/config.txt", std::ios::binary);
  cfg_os << experiments::serialize_config(cfg);
  std::printf("case %s: %zu summary rows, %d diverged runs -> %s\n",
              case_id.c_str(), result.rows.size(), result.divergences,
              result.summary_path.c_str());
  return 0;
}

int cmd_plot_data(const std::string& in_path, const std::string& out_path,
                  int stride) {
  std::ifstream is(in_path);
  if (!is) throw std::invalid_argument("cannot open run log: " + in_path);
  const experiments::CsvTable table = experiments::read_csv(is);

  const std::size_t t = table.col("t");
  const std::size_t px = table.col("p_true_x");
  const std::size_t rx = table.col("p_ref_x");
  const std::size_t u_cmd = table.col("u_cmd_1");
  const std::size_t u_act = table.col("u_act_1");

  std::ofstream os(out_path, std::ios::binary);
  if (!os) throw std::invalid_argument("cannot open output file: " + out_path);
  os << "t,p_true_x,p_true_y,p_true_z,p_ref_x,p_ref_y,p_ref_z,pos_err,"
        "u_cmd_1,u_cmd_2,u_cmd_3,u_cmd_4,u_act_1,u_act_2,u_act_3,u_act_4\n";
  for (std::size_t i = 0; i < table.rows.size(); i += std::max(1, stride)) {
    const auto& row = table.rows[i];
    Vec3 pt, pr;
    for (int k = 0; k < 3; ++k) {
      pt(k) = std::stod(row[px + static_cast<std::size_t>(k)]);
      pr(k) = std::stod(row[rx + static_cast<std::size_t>(k)]);
    }
    os << row[t];
    for (int k = 0; k < 3; ++k) os << "," << row[px + static_cast<std::size_t>(k)];
    for (int k = 0; k < 3; ++k) os << "," << row[rx + static_cast<std::size_t>(k)];
    os << "," << experiments::format_double((pt - pr).norm());
    for (int k = 0; k < 4; ++k) os << "," << row[u_cmd + static_cast<std::size_t>(k)];
    for (int k = 0; k < 4; ++k) os << "," << row[u_act + static_cast<std::size_t>(k)];
    os << "\n";
  }
  return 0;
}

experiments::ScenarioConfig build_config(const std::string& config_path,
                                         const std::vector<std::string>& sets) {
  experiments::ScenarioConfig cfg;
  if (!config_path.empty()) cfg = experiments::load_config(config_path);
  for (const std::string& s : sets) experiments::apply_override(cfg, s);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint positioning and control on a factor graph: simulation harness"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> sets;

  auto* run = app.add_subcommand("run", "Simulate one closed-loop run, write its log CSV");
  std::string run_method = "jpcm";
  std::uint64_t run_seed = 1;
  std::string run_out = "runlog.csv";
  bool allow_divergence = false;
  std::optional<double> run_drag, run_tc, run_duration;
  run->add_option("--config", config_path, "scenario config file");
  run->add_option("--set", sets, "override, key=value (repeatable)");
  run->add_option("--method", run_method, "mpc_pre | mpc | jpcm | jpcm_sw | jpcm_drag");
  run->add_option("--seed", run_seed, "RNG seed");
  run->add_option("--out", run_out, "output CSV path, '-' for stdout");
  run->add_option("--drag", run_drag, "isotropic drag D = s*I on plant and model");
  run->add_option("--tc", run_tc, "actuator time constant, s");
  run->add_option("--duration", run_duration, "run duration, s");
  run->add_flag("--allow-divergence", allow_divergence,
                "exit 0 even when the run diverges");

  auto* kase = app.add_subcommand("case", "Run an experiment matrix, write summary CSV");
  std::string case_id;
  std::string case_out = "results";
  int case_seeds = 0;
  kase->add_option("--id", case_id,
                   "case1 | case2 | drag | drag_compensated | time_constant | recovery")
      ->required();
  kase->add_option("--config", config_path, "scenario config file");
  kase->add_option("--set", sets, "override, key=value (repeatable)");
  kase->add_option("--seeds", case_seeds, "use seeds 1..N instead of the config list");
  kase->add_option("--out", case_out, "output directory");

  auto* jac = app.add_subcommand("check-jacobians",
                                 "Verify analytic Jacobians against central differences");
  int jac_points = 200;
  double jac_tol = 1e-5;
  jac->add_option("--points", jac_points, "random evaluation points per factor");
  jac->add_option("--tol", jac_tol, "max allowed relative error");

  auto* plot = app.add_subcommand("plot-data", "Down-sample a run log for plotting");
  std::string plot_in, plot_out = "plot.csv";
  int plot_stride = 10;
  plot->add_option("--in", plot_in, "run log CSV")->required();
  plot->add_option("--out", plot_out, "output CSV path");
  plot->add_option("--stride", plot_stride, "keep every k-th row");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitBadConfig;
  }

  try {
    if (run->parsed()) {
      experiments::ScenarioConfig cfg = build_config(config_path, sets);
      if (run_drag) {
        cfg.scenario.params.drag = *run_drag * Mat3::Identity();
        cfg.scenario.truth_drag = true;
      }
      if (run_tc) cfg.scenario.params.tc = *run_tc;
      if (run_duration) cfg.scenario.duration = *run_duration;
      return cmd_run(cfg, run_method, run_seed, run_out, allow_divergence);
    }
    if (kase->parsed()) {
      experiments::ScenarioConfig cfg = build_config(config_path, sets);
      if (case_seeds > 0) {
        cfg.seeds.clear();
        for (int s = 1; s <= case_seeds; ++s) {
          cfg.seeds.push_back(static_cast<std::uint64_t>(s));
        }
      }
      return cmd_case(case_id, cfg, case_out);
    }
    if (jac->parsed()) return cmd_check_jacobians(jac_points, jac_tol);
    if (plot->parsed()) return cmd_plot_data(plot_in, plot_out, plot_stride);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBadConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kExitInternal;
  }
  return 0;
}
