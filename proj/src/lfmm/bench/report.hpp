#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace lfmm::bench {

using Value = std::variant<std::monostate, bool, std::int64_t, double, std::string>;

// One trial. Fields stay in insertion order; a missing field is an empty
// cell.
struct TrialRecord {
  std::int64_t trial = 0;
  std::vector<std::pair<std::string, Value>> fields;
  std::string error;
  double wall_time = 0.0;  // seconds; reported separately

  void set(const std::string& key, Value v);
  const Value* get(const std::string& key) const;
  double number(const std::string& key) const;  // NaN when absent or not numeric
};

struct Report {
  std::string kind;
  std::vector<std::string> columns;  // "trial" first, "error" last
  std::vector<std::vector<Value>> rows;
  std::vector<std::pair<std::string, double>> summary;
  std::vector<double> wall_times;
};

// Columns: "trial", then `columns`, then "error". Summary starts with the
// mean of every numeric column (trial excluded) followed by `extra_summary`.
Report make_report(const std::string& kind, const std::vector<std::string>& columns,
                   const std::vector<TrialRecord>& records,
                   const std::vector<std::pair<std::string, double>>& extra_summary = {});

// Floats with 6 significant digits.
std::string format_number(double v);
// Rounds v to what format_number prints.
double round_sig6(double v);

void write_csv(std::ostream& out, const Report& report);
void write_summary_csv(std::ostream& out, const Report& report);
void write_json(std::ostream& out, const Report& report);
Report read_json(std::istream& in);

enum class ReportFormat { Csv, Json };

// Writes <dir>/<kind>.csv (and <kind>_summary.csv) or <kind>.json, plus
// <kind>_timing.csv with per-trial wall times. Throws InvalidArgument on
// an empty report and Io on write failures. Returns the main file path.
std::filesystem::path emit_report(const Report& report, ReportFormat format, const std::filesystem::path& dir);

}  // namespace lfmm::bench
