#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jpcm/sim/scenario.hpp"

namespace jpcm::experiments {

// Scenario plus the experiment matrix it drives. Serialized as flat
// `key = value` lines with dotted namespaces; `#` starts a comment. The key
// set is closed: unknown keys are a parse error, and parse → serialize →
// parse is the identity. The drag matrix is exposed as a single scalar s
// with D = s·I.
struct ScenarioConfig {
  sim::Scenario scenario;
  std::vector<std::string> methods = {"mpc_pre", "mpc", "jpcm"};
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
};

// Maps a method name (mpc_pre, mpc, jpcm, jpcm_sw, jpcm_drag) to the
// controller kind. Throws std::invalid_argument for anything else.
ControllerKind method_kind(const std::string& name);
std::string method_name(ControllerKind kind);

// True for methods that observe the true state directly (mpc_pre): the case
// runner zeroes the observation noise for them.
bool method_observes_truth(const std::string& name);

ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);
std::string serialize_config(const ScenarioConfig& cfg);

// Applies one `key=value` override on top of an existing config. Same key
// set and error behavior as the file parser.
void apply_override(ScenarioConfig& cfg, const std::string& assignment);

}  // namespace jpcm::experiments
