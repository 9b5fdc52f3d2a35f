#include "volterra/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace volterra {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) os << ',';
    os << columns[i];
  }
  os << '\n';
  for (const auto& row : rows) {
    if (row.size() != columns.size())
      throw std::invalid_argument("write_csv: row width does not match header");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << format_g17(row[i]);
    }
    os << '\n';
  }
}

void write_csv_file(const std::string& path, const std::vector<std::string>& columns,
                    const std::vector<std::vector<double>>& rows) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_csv(os, columns, rows);
}

void write_report_json(const std::string& path, const RunReport& report) {
  nlohmann::ordered_json j;
  j["command"] = report.command;
  j["params"] = report.params;
  j["seed"] = report.seed;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"statistic", c.statistic},
                      {"threshold", c.threshold},
                      {"pass", c.pass}});
  }
  j["checks"] = checks;
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << j.dump(2) << '\n';
}

int print_checks(std::ostream& os, const RunReport& report) {
  bool all = true;
  for (const auto& c : report.checks) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-28s %12.4g  (<= %.3g)  %s", c.name.c_str(), c.statistic,
                  c.threshold, c.pass ? "pass" : "FAIL");
    os << buf << '\n';
    all = all && c.pass;
  }
  return all ? 0 : 1;
}

int Csv::col(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return static_cast<int>(i);
  return -1;
}

double Csv::num(std::size_t row, int column) const {
  if (column < 0 || row >= cells.size()) throw std::out_of_range("Csv::num");
  return std::stod(cells[row][column]);
}

Csv read_csv_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open: " + path);
  Csv csv;
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty csv: " + path);
  std::stringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) csv.columns.push_back(cell);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> row;
    std::stringstream rs(line);
    while (std::getline(rs, cell, ',')) row.push_back(cell);
    if (row.size() != csv.columns.size())
      throw std::runtime_error("ragged csv row in " + path);
    csv.cells.push_back(std::move(row));
  }
  return csv;
}

}  // namespace volterra
