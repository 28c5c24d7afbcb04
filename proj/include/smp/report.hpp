#pragma once

// Experiment reports: one record per metric, auxiliary details, and timings
// kept apart so equal runs give byte-identical output without them.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace smp {

inline constexpr const char* kReportSchema = "smplab.report";
inline constexpr int kReportVersion = 1;

struct Metric {
  std::string name;
  double value = 0.0;
  std::optional<std::string> exact;  // "p/q" when computed exactly
  std::string mode = "exact";        // exact | mc | formula
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  std::optional<double> std_error;
  std::optional<std::string> bound;  // the inequality checked, verbatim
  std::optional<bool> pass;

  friend bool operator==(const Metric&, const Metric&) = default;
};

struct Report {
  std::string command;
  std::map<std::string, std::string> parameters;
  std::vector<Metric> metrics;
  nlohmann::json details = nlohmann::json::object();
  std::map<std::string, double> timings;  // seconds

  Metric& add(Metric m);
  // True when no metric with a verdict failed.
  bool all_pass() const;
  std::vector<std::string> failures() const;

  friend bool operator==(const Report&, const Report&) = default;
};

nlohmann::json report_to_json(const Report& report, bool include_timings = true);
Report report_from_json(const nlohmann::json& doc);
std::string serialize_report(const Report& report, bool include_timings = true);
Report parse_report(const std::string& text);

// Header plus one row per metric.
std::string report_to_csv(const Report& report);

// Writes <stem>.json and <stem>.csv.
void write_report(const Report& report, const std::string& stem);

}  // namespace smp
