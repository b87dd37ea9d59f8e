#include "jpcm/experiments/cases.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <stdexcept>

#include "jpcm/experiments/csv.hpp"

namespace jpcm::experiments {
namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (const unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string sanitize(const std::string& s) {
  std::string out;
  for (const char c : s) {
    if (c == '=' || c == '.') {
      out += '_';
    } else {
      out += c;
    }
  }
  return out;
}

// One sweep point of a case: the method plus any scenario adjustment.
struct Variant {
  std::string method;
  std::string param;  // summary tag, empty when the case has no sweep axis
  std::function<void(sim::Scenario&)> adjust;
};

std::vector<Variant> case_variants(const std::string& case_id,
                                   const ScenarioConfig& base) {
  std::vector<Variant> v;
  const auto none = [](sim::Scenario&) {};
  if (case_id == "case1") {
    for (const std::string m : {"mpc_pre", "mpc", "jpcm"}) v.push_back({m, "", none});
  } else if (case_id == "case2") {
    const int m = base.scenario.horizon.M < 2 ? 10 : base.scenario.horizon.M;
    v.push_back({"jpcm", "", none});
    v.push_back({"jpcm_sw", "M=" + std::to_string(m),
                 [m](sim::Scenario& s) { s.horizon.M = m; }});
  } else if (case_id == "drag") {
    for (const double d : {0.0, 0.1, 0.2, 0.3}) {
      char tag[24];
      std::snprintf(tag, sizeof(tag), "drag=%.1f", d);
      v.push_back({"jpcm", tag, [d](sim::Scenario& s) {
                     s.params.drag = d * Mat3::Identity();
                     s.truth_drag = true;
                   }});
    }
  } else if (case_id == "drag_compensated") {
    v.push_back({"jpcm_drag", "drag=0.3", [](sim::Scenario& s) {
                   s.params.drag = 0.3 * Mat3::Identity();
                   s.truth_drag = true;
                 }});
  } else if (case_id == "time_constant") {
    for (const double tc : {0.010, 0.025, 0.050, 0.060, 0.100}) {
      char tag[24];
      std::snprintf(tag, sizeof(tag), "tc=%.3f", tc);
      v.push_back({"jpcm", tag, [tc](sim::Scenario& s) { s.params.tc = tc; }});
    }
  } else if (case_id == "recovery") {
    // Both controllers recover from the same displacement with exact
    // observations; under full observation noise the pure MPC does not
    // finish the run, which would leave nothing to compare.
    const auto setup = [](sim::Scenario& s) {
      s.noise.obs_pos = s.noise.obs_rot = s.noise.obs_vel = s.noise.obs_omega = 0.0;
      sim::Disturbance d;
      d.time = 0.5;
      d.kind = sim::DisturbanceKind::kDisplacement;
      d.vector = Vec3(0.0, 0.30, -0.40);
      s.disturbances = {d};
    };
    v.push_back({"mpc", "", setup});
    v.push_back({"jpcm", "", setup});
  } else {
    throw std::invalid_argument("unknown case: '" + case_id + "'");
  }
  return v;
}

void append_aggregates(std::vector<CaseRow>& rows, std::size_t group_begin) {
  // Aggregate over the group's runs that carry an RMSE.
  Vec3 pm = Vec3::Zero(), rm = Vec3::Zero();
  long n = 0;
  double div_sum = 0.0;
  const std::size_t group_end = rows.size();
  for (std::size_t i = group_begin; i < group_end; ++i) {
    div_sum += rows[i].diverged.value_or(0.0);
    if (!rows[i].has_rmse) continue;
    pm += rows[i].pos_rmse;
    rm += rows[i].rot_rmse;
    ++n;
  }
  CaseRow mean = rows[group_begin];
  mean.seed = "mean";
  mean.diverged = group_end > group_begin
                      ? div_sum / static_cast<double>(group_end - group_begin)
                      : 0.0;
  mean.diverged_at.reset();
  mean.recovery.reset();
  mean.has_rmse = n > 0;
  if (n > 0) {
    mean.pos_rmse = pm / static_cast<double>(n);
    mean.rot_rmse = rm / static_cast<double>(n);
  } else {
    mean.pos_rmse = mean.rot_rmse = Vec3::Zero();
  }

  CaseRow sd = mean;
  sd.seed = "std";
  sd.diverged.reset();
  Vec3 pv = Vec3::Zero(), rv = Vec3::Zero();
  if (n > 1) {
    for (std::size_t i = group_begin; i < group_end; ++i) {
      if (!rows[i].has_rmse) continue;
      const Vec3 dp = rows[i].pos_rmse - mean.pos_rmse;
      const Vec3 dr = rows[i].rot_rmse - mean.rot_rmse;
      pv += dp.cwiseProduct(dp);
      rv += dr.cwiseProduct(dr);
    }
    pv /= static_cast<double>(n - 1);
    rv /= static_cast<double>(n - 1);
  }
  sd.pos_rmse = pv.cwiseSqrt();
  sd.rot_rmse = rv.cwiseSqrt();

  rows.push_back(std::move(mean));
  rows.push_back(std::move(sd));
}

std::string row_line(const CaseRow& r) {
  const auto opt = [](const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
  };
  std::string line = r.case_id + "," + r.method + "," + r.param + "," + r.seed + ",";
  line += opt(r.diverged) + "," + opt(r.diverged_at);
  for (int i = 0; i < 3; ++i) {
    line += ",";
    if (r.has_rmse) line += format_double(r.pos_rmse(i));
  }
  for (int i = 0; i < 3; ++i) {
    line += ",";
    if (r.has_rmse) line += format_double(r.rot_rmse(i));
  }
  line += "," + opt(r.recovery);
  return line;
}

}  // namespace

std::string summary_header() {
  return "case,method,param,seed,diverged,diverged_at,"
         "pos_rmse_x,pos_rmse_y,pos_rmse_z,"
         "rot_rmse_x,rot_rmse_y,rot_rmse_z,"
         "recovery_time";
}

sim::Scenario method_scenario(const ScenarioConfig& cfg, const std::string& method) {
  method_kind(method);  // validate the name
  sim::Scenario sc = cfg.scenario;
  if (method_observes_truth(method)) {
    sc.noise.obs_pos = sc.noise.obs_rot = sc.noise.obs_vel = sc.noise.obs_omega = 0.0;
  }
  if (method == "jpcm_sw" && sc.horizon.M < 2) sc.horizon.M = 10;
  return sc;
}

sim::RunLog run_single(const ScenarioConfig& cfg, const std::string& method,
                       std::uint64_t seed) {
  const sim::Scenario sc = method_scenario(cfg, method);
  sim::RunLog log = sim::simulate_run(sc, method_kind(method), seed);
  log.config_hash =
      fnv1a(serialize_config(cfg) + "\n" + method + "\n" + std::to_string(seed));
  return log;
}

CaseResult run_case(const std::string& case_id, const ScenarioConfig& base,
                    const std::string& out_dir) {
  const std::vector<Variant> variants = case_variants(case_id, base);
  std::filesystem::create_directories(out_dir);

  CaseResult result;
  for (const Variant& var : variants) {
    const std::size_t group_begin = result.rows.size();
    for (const std::uint64_t seed : base.seeds) {
      sim::Scenario sc = method_scenario(base, var.method);
      var.adjust(sc);

      ScenarioConfig run_cfg = base;
      run_cfg.scenario = sc;
      sim::RunLog log = sim::simulate_run(sc, method_kind(var.method), seed);
      log.config_hash = fnv1a(serialize_config(run_cfg) + "\n" + var.method + "\n" +
                              std::to_string(seed));

      std::string name = case_id + "_" + var.method;
      if (!var.param.empty()) name += "_" + sanitize(var.param);
      name += "_seed" + std::to_string(seed) + ".csv";
      std::ofstream run_os(std::filesystem::path(out_dir) / name,
                           std::ios::binary);
      write_runlog_csv(run_os, log);

      CaseRow row;
      row.case_id = case_id;
      row.method = var.method;
      row.param = var.param;
      row.seed = std::to_string(seed);
      row.diverged = log.diverged ? 1.0 : 0.0;
      if (log.diverged) {
        row.diverged_at = log.diverged_at;
        ++result.divergences;
      }
      try {
        const RmseReport rep = compute_rmse(log, kRmseWarmup);
        row.has_rmse = true;
        row.pos_rmse = rep.pos_rmse;
        row.rot_rmse = rep.rot_rmse;
      } catch (const std::invalid_argument&) {
        // Diverged inside the warm-up window: the row records only the flag.
      }
      if (case_id == "recovery") {
        row.recovery = recovery_time(log, 0.5, kRecoveryTube);
      }
      result.rows.push_back(std::move(row));
    }
    append_aggregates(result.rows, group_begin);
  }

  const auto path = std::filesystem::path(out_dir) / "summary.csv";
  std::ofstream os(path, std::ios::binary);
  os << summary_header() << "\n";
  for (const CaseRow& r : result.rows) os << row_line(r) << "\n";
  result.summary_path = path.string();
  return result;
}

}  // namespace jpcm::experiments
