#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace ecyc {

// Deterministic double formatting for report columns.
inline std::string fmt_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Minimal CSV emitter: one header row, data rows, and a trailing comment
// line recording the run configuration so outputs are round-trippable.
class CsvWriter {
 public:
  CsvWriter(std::ostream& os, std::vector<std::string> columns) : os_(os) {
    write_cells(columns);
  }

  void row(const std::vector<std::string>& cells) { write_cells(cells); }

  void footer_config(const std::vector<std::pair<std::string, std::string>>& kv) {
    os_ << "# config:";
    for (const auto& [k, v] : kv) os_ << ' ' << k << '=' << v;
    os_ << '\n';
  }

 private:
  void write_cells(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os_ << ',';
      os_ << cells[i];
    }
    os_ << '\n';
  }
  std::ostream& os_;
};

}  // namespace ecyc
