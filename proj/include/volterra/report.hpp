#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace volterra {

struct CheckRow {
  std::string name;
  double statistic = 0.0;  // residual or test statistic
  double threshold = 0.0;
  bool pass = false;
};

struct RunReport {
  std::string command;
  std::map<std::string, std::string> params;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<CheckRow> checks;
  std::uint64_t seed = 0;
  double wall_time = 0.0;  // printed to the console, never written to files

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

/// One-line header CSV, comma separated, '.' decimal, 17 significant digits.
void write_csv(std::ostream& os, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);
void write_csv_file(const std::string& path, const std::vector<std::string>& columns,
                    const std::vector<std::vector<double>>& rows);

/// JSON sidecar with params and the checks list (deterministic content only).
void write_report_json(const std::string& path, const RunReport& report);

/// Prints the checks table; returns the process exit code (0 all pass, 1 any
/// failure).
int print_checks(std::ostream& os, const RunReport& report);

struct Csv {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> cells;
  int col(const std::string& name) const;  // -1 if absent
  double num(std::size_t row, int column) const;
};
Csv read_csv_file(const std::string& path);

std::string format_g17(double v);

}  // namespace volterra
