#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "jpcm/sim/run.hpp"

namespace jpcm::experiments {

// Fixed per-step schema, one row per control cycle. Doubles print as %.17g so
// identical runs serialize byte-identically and parse back exactly.
std::string runlog_header();
void write_runlog_csv(std::ostream& os, const sim::RunLog& log);

// Minimal reader for the files this module writes: no quoting, `.` decimal,
// first row is the header.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  // Column index by name; throws std::invalid_argument when absent.
  std::size_t col(const std::string& name) const;
};
CsvTable read_csv(std::istream& is);

std::string format_double(double v);  // %.17g

}  // namespace jpcm::experiments
