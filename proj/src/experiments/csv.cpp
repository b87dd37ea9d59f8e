#include "jpcm/experiments/csv.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "jpcm/lie.hpp"

namespace jpcm::experiments {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string runlog_header() {
  return "t,"
         "p_true_x,p_true_y,p_true_z,"
         "theta_true_x,theta_true_y,theta_true_z,"
         "v_true_x,v_true_y,v_true_z,"
         "omega_true_x,omega_true_y,omega_true_z,"
         "p_obs_x,p_obs_y,p_obs_z,"
         "p_est_x,p_est_y,p_est_z,"
         "p_ref_x,p_ref_y,p_ref_z,"
         "u_cmd_1,u_cmd_2,u_cmd_3,u_cmd_4,"
         "u_act_1,u_act_2,u_act_3,u_act_4,"
         "iters,cost,event";
}

void write_runlog_csv(std::ostream& os, const sim::RunLog& log) {
  os << runlog_header() << "\n";
  for (const sim::StepRecord& s : log.steps) {
    const Vec3 theta = log_so3(s.truth.R.matrix());
    os << format_double(s.t);
    const auto vec = [&os](const Vec3& v) {
      os << "," << format_double(v(0)) << "," << format_double(v(1)) << ","
         << format_double(v(2));
    };
    vec(s.truth.p);
    vec(theta);
    vec(s.truth.v);
    vec(s.truth.omega);
    vec(s.observed.p);
    vec(s.estimate.p);
    vec(s.ref.p);
    for (int i = 0; i < 4; ++i) os << "," << format_double(s.u_cmd(i));
    for (int i = 0; i < 4; ++i) os << "," << format_double(s.u_act(i));
    os << "," << s.iterations << "," << format_double(s.cost) << "," << s.event
       << "\n";
  }
}

std::size_t CsvTable::col(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw std::invalid_argument("csv: no column named '" + name + "'");
}

CsvTable read_csv(std::istream& is) {
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    if (first) {
      table.header = std::move(cells);
      first = false;
    } else {
      table.rows.push_back(std::move(cells));
    }
  }
  return table;
}

}  // namespace jpcm::experiments
