#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jpcm/experiments/config.hpp"
#include "jpcm/experiments/metrics.hpp"

namespace jpcm::experiments {

// One summary.csv row: a run (seed = "1"..) or an aggregate (seed = "mean" |
// "std") over the runs of the same (method, param) group that produced an
// RMSE. Diverged runs keep whatever RMSE their pre-divergence steps support;
// runs that diverge inside the warm-up window carry no RMSE at all.
struct CaseRow {
  std::string case_id;
  std::string method;
  std::string param;  // sweep tag like "drag=0.1" or "tc=0.025", else empty
  std::string seed;
  bool has_rmse = false;
  Vec3 pos_rmse = Vec3::Zero();
  Vec3 rot_rmse = Vec3::Zero();
  std::optional<double> diverged;     // 0/1 per run, rate in the mean row
  std::optional<double> diverged_at;  // per run only
  std::optional<double> recovery;     // recovery case only
};

struct CaseResult {
  std::string summary_path;
  std::vector<CaseRow> rows;
  int divergences = 0;
};

inline constexpr double kRmseWarmup = 1.0;       // s skipped before averaging
inline constexpr double kRecoveryTube = 0.05;    // m, re-entry tube radius

// Builds the per-method scenario for one run: zeroed observation noise for
// truth-observing methods, a sliding window of 10 when the config does not
// already provide one, and the base scenario otherwise.
sim::Scenario method_scenario(const ScenarioConfig& cfg, const std::string& method);

// Runs one (method, seed) pair under the config's scenario.
sim::RunLog run_single(const ScenarioConfig& cfg, const std::string& method,
                       std::uint64_t seed);

// Runs the case matrix, writes out_dir/summary.csv plus one run log CSV per
// (method, param, seed), and returns the summary rows. case_id must be one of
// case1, case2, drag, drag_compensated, time_constant, recovery.
CaseResult run_case(const std::string& case_id, const ScenarioConfig& base,
                    const std::string& out_dir);

std::string summary_header();

}  // namespace jpcm::experiments
