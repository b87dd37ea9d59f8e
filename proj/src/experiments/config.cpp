#include "jpcm/experiments/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace jpcm::experiments {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& v) {
  std::size_t pos = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + v + "'");
  }
  if (trim(v.substr(pos)) != "") {
    throw std::invalid_argument("not a number: '" + v + "'");
  }
  return out;
}

int parse_int(const std::string& v) {
  const double d = parse_double(v);
  const int i = static_cast<int>(d);
  if (static_cast<double>(i) != d) {
    throw std::invalid_argument("not an integer: '" + v + "'");
  }
  return i;
}

bool parse_bool(const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw std::invalid_argument("not a bool (true|false): '" + v + "'");
}

std::vector<std::string> split(const std::string& v, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(trim(item));
  return parts;
}

std::vector<double> parse_doubles(const std::string& v, std::size_t n) {
  const auto parts = split(v, ',');
  if (parts.size() != n) {
    throw std::invalid_argument("expected " + std::to_string(n) +
                                " comma-separated values: '" + v + "'");
  }
  std::vector<double> out;
  out.reserve(n);
  for (const auto& p : parts) out.push_back(parse_double(p));
  return out;
}

Vec3 parse_vec3(const std::string& v) {
  const auto d = parse_doubles(v, 3);
  return Vec3(d[0], d[1], d[2]);
}

std::string fmt_vec3(const Vec3& v) {
  return fmt(v(0)) + "," + fmt(v(1)) + "," + fmt(v(2));
}

// One configurable key: how to print it and how to assign it.
struct Entry {
  const char* key;
  std::function<std::string(const ScenarioConfig&)> get;
  std::function<void(ScenarioConfig&, const std::string&)> set;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = [] {
    std::vector<Entry> r;
    auto dbl = [&r](const char* key, auto member) {
      r.push_back({key,
                   [member](const ScenarioConfig& c) { return fmt(member(const_cast<ScenarioConfig&>(c))); },
                   [member](ScenarioConfig& c, const std::string& v) { member(c) = parse_double(v); }});
    };
    auto integer = [&r](const char* key, auto member) {
      r.push_back({key,
                   [member](const ScenarioConfig& c) {
                     return std::to_string(member(const_cast<ScenarioConfig&>(c)));
                   },
                   [member](ScenarioConfig& c, const std::string& v) { member(c) = parse_int(v); }});
    };
    auto boolean = [&r](const char* key, auto member) {
      r.push_back({key,
                   [member](const ScenarioConfig& c) {
                     return member(const_cast<ScenarioConfig&>(c)) ? "true" : "false";
                   },
                   [member](ScenarioConfig& c, const std::string& v) { member(c) = parse_bool(v); }});
    };
    auto vec3 = [&r](const char* key, auto member) {
      r.push_back({key,
                   [member](const ScenarioConfig& c) {
                     return fmt_vec3(member(const_cast<ScenarioConfig&>(c)));
                   },
                   [member](ScenarioConfig& c, const std::string& v) { member(c) = parse_vec3(v); }});
    };

    dbl("duration", [](ScenarioConfig& c) -> double& { return c.scenario.duration; });
    dbl("divergence_limit",
        [](ScenarioConfig& c) -> double& { return c.scenario.divergence_limit; });
    boolean("warm_start", [](ScenarioConfig& c) -> bool& { return c.scenario.warm_start; });
    boolean("truth_drag", [](ScenarioConfig& c) -> bool& { return c.scenario.truth_drag; });

    dbl("params.mass", [](ScenarioConfig& c) -> double& { return c.scenario.params.mass; });
    dbl("params.gravity", [](ScenarioConfig& c) -> double& { return c.scenario.params.gravity; });
    vec3("params.inertia", [](ScenarioConfig& c) -> Vec3& { return c.scenario.params.inertia; });
    dbl("params.ct", [](ScenarioConfig& c) -> double& { return c.scenario.params.ct; });
    dbl("params.km_ratio", [](ScenarioConfig& c) -> double& { return c.scenario.params.km_ratio; });
    dbl("params.lx", [](ScenarioConfig& c) -> double& { return c.scenario.params.lx; });
    dbl("params.ly", [](ScenarioConfig& c) -> double& { return c.scenario.params.ly; });
    dbl("params.tc", [](ScenarioConfig& c) -> double& { return c.scenario.params.tc; });
    r.push_back({"params.drag",
                 [](const ScenarioConfig& c) { return fmt(c.scenario.params.drag(0, 0)); },
                 [](ScenarioConfig& c, const std::string& v) {
                   c.scenario.params.drag = parse_double(v) * Mat3::Identity();
                 }});
    dbl("params.drag_sign",
        [](ScenarioConfig& c) -> double& { return c.scenario.params.drag_sign; });
    dbl("params.thrust_sigma",
        [](ScenarioConfig& c) -> double& { return c.scenario.params.thrust_sigma; });
    dbl("params.omega_sigma",
        [](ScenarioConfig& c) -> double& { return c.scenario.params.omega_sigma; });

    dbl("circle.radius", [](ScenarioConfig& c) -> double& { return c.scenario.circle.radius; });
    dbl("circle.speed", [](ScenarioConfig& c) -> double& { return c.scenario.circle.speed; });
    vec3("circle.center", [](ScenarioConfig& c) -> Vec3& { return c.scenario.circle.center; });

    dbl("noise.obs_pos", [](ScenarioConfig& c) -> double& { return c.scenario.noise.obs_pos; });
    dbl("noise.obs_rot", [](ScenarioConfig& c) -> double& { return c.scenario.noise.obs_rot; });
    dbl("noise.obs_vel", [](ScenarioConfig& c) -> double& { return c.scenario.noise.obs_vel; });
    dbl("noise.obs_omega",
        [](ScenarioConfig& c) -> double& { return c.scenario.noise.obs_omega; });
    dbl("noise.rel_sigma", [](ScenarioConfig& c) -> double& { return c.scenario.noise.rel_sigma; });
    dbl("noise.thrust_sigma",
        [](ScenarioConfig& c) -> double& { return c.scenario.noise.thrust_sigma; });
    dbl("noise.omega_sigma",
        [](ScenarioConfig& c) -> double& { return c.scenario.noise.omega_sigma; });

    integer("horizon.M", [](ScenarioConfig& c) -> int& { return c.scenario.horizon.M; });
    integer("horizon.N", [](ScenarioConfig& c) -> int& { return c.scenario.horizon.N; });
    dbl("horizon.dt", [](ScenarioConfig& c) -> double& { return c.scenario.horizon.dt; });

    dbl("limits.u_min", [](ScenarioConfig& c) -> double& { return c.scenario.limits.u_min; });
    dbl("limits.u_max", [](ScenarioConfig& c) -> double& { return c.scenario.limits.u_max; });
    dbl("limits.u_thr", [](ScenarioConfig& c) -> double& { return c.scenario.limits.u_thr; });
    dbl("limits.sigma", [](ScenarioConfig& c) -> double& { return c.scenario.limits.sigma; });

    // Stage weights are isotropic per block, so the file stores one sigma
    // per block: q_k/q_n as "p,v,theta", p_c as "p,theta,v,omega".
    r.push_back({"weights.q_k",
                 [](const ScenarioConfig& c) {
                   const auto& q = c.scenario.weights.q_k;
                   return fmt(q(0)) + "," + fmt(q(3)) + "," + fmt(q(6));
                 },
                 [](ScenarioConfig& c, const std::string& v) {
                   const auto d = parse_doubles(v, 3);
                   c.scenario.weights.q_k = Weights::stage_sigmas(d[0], d[1], d[2]);
                 }});
    r.push_back({"weights.q_n",
                 [](const ScenarioConfig& c) {
                   const auto& q = c.scenario.weights.q_n;
                   return fmt(q(0)) + "," + fmt(q(3)) + "," + fmt(q(6));
                 },
                 [](ScenarioConfig& c, const std::string& v) {
                   const auto d = parse_doubles(v, 3);
                   c.scenario.weights.q_n = Weights::stage_sigmas(d[0], d[1], d[2]);
                 }});
    dbl("weights.r_t", [](ScenarioConfig& c) -> double& { return c.scenario.weights.r_t; });
    r.push_back({"weights.p_c",
                 [](const ScenarioConfig& c) {
                   const auto& p = c.scenario.weights.p_c;
                   return fmt(p(0)) + "," + fmt(p(3)) + "," + fmt(p(6)) + "," + fmt(p(9));
                 },
                 [](ScenarioConfig& c, const std::string& v) {
                   const auto d = parse_doubles(v, 4);
                   c.scenario.weights.p_c = Weights::state_sigmas(d[0], d[1], d[2], d[3]);
                 }});
    r.push_back({"weights.p_l",
                 [](const ScenarioConfig& c) { return fmt(c.scenario.weights.p_l(0)); },
                 [](ScenarioConfig& c, const std::string& v) {
                   c.scenario.weights.p_l = Vec6::Constant(parse_double(v));
                 }});
    dbl("weights.prior_sigma",
        [](ScenarioConfig& c) -> double& { return c.scenario.weights.prior_sigma; });

    integer("solver.max_iterations",
            [](ScenarioConfig& c) -> int& { return c.scenario.solver.max_iterations; });
    dbl("solver.initial_lambda",
        [](ScenarioConfig& c) -> double& { return c.scenario.solver.initial_lambda; });
    dbl("solver.relative_cost_tol",
        [](ScenarioConfig& c) -> double& { return c.scenario.solver.relative_cost_tol; });
    dbl("solver.gradient_tol",
        [](ScenarioConfig& c) -> double& { return c.scenario.solver.gradient_tol; });

    r.push_back({"methods",
                 [](const ScenarioConfig& c) {
                   std::string out;
                   for (const auto& m : c.methods) {
                     if (!out.empty()) out += ",";
                     out += m;
                   }
                   return out;
                 },
                 [](ScenarioConfig& c, const std::string& v) {
                   c.methods = split(v, ',');
                   for (const auto& m : c.methods) method_kind(m);  // validate
                 }});
    r.push_back({"seeds",
                 [](const ScenarioConfig& c) {
                   std::string out;
                   for (const auto s : c.seeds) {
                     if (!out.empty()) out += ",";
                     out += std::to_string(s);
                   }
                   return out;
                 },
                 [](ScenarioConfig& c, const std::string& v) {
                   c.seeds.clear();
                   for (const auto& p : split(v, ',')) {
                     const int s = parse_int(p);
                     if (s < 0) throw std::invalid_argument("seed must be non-negative");
                     c.seeds.push_back(static_cast<std::uint64_t>(s));
                   }
                 }});
    return r;
  }();
  return entries;
}

// Disturbances use indexed keys outside the fixed registry:
// disturbance.<i>.{time,kind,vector,duration}.
bool set_disturbance_key(ScenarioConfig& cfg, const std::string& key,
                         const std::string& value) {
  const std::string prefix = "disturbance.";
  if (key.rfind(prefix, 0) != 0) return false;
  const auto rest = key.substr(prefix.size());
  const auto dot = rest.find('.');
  if (dot == std::string::npos) {
    throw std::invalid_argument("malformed disturbance key: '" + key + "'");
  }
  const int idx = parse_int(rest.substr(0, dot));
  if (idx < 0) throw std::invalid_argument("negative disturbance index");
  const std::string field = rest.substr(dot + 1);
  auto& list = cfg.scenario.disturbances;
  if (static_cast<std::size_t>(idx) >= list.size()) {
    list.resize(static_cast<std::size_t>(idx) + 1);
  }
  sim::Disturbance& d = list[static_cast<std::size_t>(idx)];
  if (field == "time") {
    d.time = parse_double(value);
  } else if (field == "kind") {
    if (value == "displacement") {
      d.kind = sim::DisturbanceKind::kDisplacement;
    } else if (value == "wind_force") {
      d.kind = sim::DisturbanceKind::kWindForce;
    } else {
      throw std::invalid_argument("unknown disturbance kind: '" + value + "'");
    }
  } else if (field == "vector") {
    d.vector = parse_vec3(value);
  } else if (field == "duration") {
    d.duration = parse_double(value);
  } else {
    throw std::invalid_argument("unknown disturbance field: '" + field + "'");
  }
  return true;
}

void set_key(ScenarioConfig& cfg, const std::string& key, const std::string& value) {
  for (const auto& e : registry()) {
    if (key == e.key) {
      e.set(cfg, value);
      return;
    }
  }
  if (set_disturbance_key(cfg, key, value)) return;
  throw std::invalid_argument("unknown key: '" + key + "'");
}

}  // namespace

ControllerKind method_kind(const std::string& name) {
  if (name == "mpc_pre" || name == "mpc") return ControllerKind::kMpc;
  if (name == "jpcm") return ControllerKind::kJpcm;
  if (name == "jpcm_sw") return ControllerKind::kJpcmSw;
  if (name == "jpcm_drag") return ControllerKind::kJpcmDrag;
  throw std::invalid_argument("unknown method: '" + name + "'");
}

std::string method_name(ControllerKind kind) {
  switch (kind) {
    case ControllerKind::kMpc:
      return "mpc";
    case ControllerKind::kJpcm:
      return "jpcm";
    case ControllerKind::kJpcmSw:
      return "jpcm_sw";
    case ControllerKind::kJpcmDrag:
      return "jpcm_drag";
  }
  return "unknown";
}

bool method_observes_truth(const std::string& name) { return name == "mpc_pre"; }

ScenarioConfig parse_config(const std::string& text) {
  ScenarioConfig cfg;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("line " + std::to_string(lineno) +
                                  ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      set_key(cfg, key, value);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const ScenarioConfig& cfg) {
  std::string out;
  for (const auto& e : registry()) {
    out += e.key;
    out += " = ";
    out += e.get(cfg);
    out += "\n";
  }
  for (std::size_t i = 0; i < cfg.scenario.disturbances.size(); ++i) {
    const sim::Disturbance& d = cfg.scenario.disturbances[i];
    const std::string p = "disturbance." + std::to_string(i) + ".";
    out += p + "time = " + fmt(d.time) + "\n";
    out += p + "kind = " +
           (d.kind == sim::DisturbanceKind::kDisplacement ? "displacement"
                                                          : "wind_force") +
           "\n";
    out += p + "vector = " + fmt_vec3(d.vector) + "\n";
    out += p + "duration = " + fmt(d.duration) + "\n";
  }
  return out;
}

void apply_override(ScenarioConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw std::invalid_argument("override must be key=value: '" + assignment + "'");
  }
  set_key(cfg, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

}  // namespace jpcm::experiments
