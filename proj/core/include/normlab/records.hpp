#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "normlab/manifest.hpp"

namespace normlab {

/// Numeric table written as an RFC-4180 CSV.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// One contract evaluated by an experiment.
struct Check {
  std::string name;
  double value = 0.0;
  std::string relation;  // "<=", ">=", "<", ">", "in"
  double bound = 0.0;
  double upper = 0.0;    // second bound for "in"
  bool pass = false;
  /// Wall-clock contracts are kept out of the CSVs, which must depend on the
  /// config alone; they are written to the manifest instead.
  bool timing = false;
};

Check check_le(std::string name, double value, double bound);
Check check_ge(std::string name, double value, double bound);
Check check_lt(std::string name, double value, double bound);
Check check_gt(std::string name, double value, double bound);
Check check_in(std::string name, double value, double lower, double upper);
/// seconds < limit, flagged as a timing contract.
Check check_runtime(double seconds, double limit);

struct Report {
  std::string experiment;
  std::string config_hash;
  std::vector<Table> tables;
  std::vector<Check> checks;
  Manifest manifest;
  std::vector<std::string> warnings;
  double runtime_seconds = 0.0;

  bool passed() const;
};

/// Quotes a field when it holds a comma, quote or line break.
std::string csv_field(const std::string& text);
void write_csv(std::ostream& out, const Table& table);
/// Polyline plot of every column against the first, as a standalone SVG.
void write_svg(std::ostream& out, const Table& table, bool log_y = false);

/// Writes <experiment>_<table>.csv and .svg for each table,
/// <experiment>_checks.csv and <experiment>_manifest.json into dir. Only the
/// manifest carries the runtime, so the CSVs depend on the config alone.
std::vector<std::filesystem::path> write_report(const Report& report, const std::filesystem::path& dir);

/// Human-readable PASS/FAIL lines.
void print_checks(std::ostream& out, const Report& report);

}  // namespace normlab
