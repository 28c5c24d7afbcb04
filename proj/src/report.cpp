#include "smp/report.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "smp/error.hpp"

namespace smp {

using nlohmann::json;

Metric& Report::add(Metric m) {
  metrics.push_back(std::move(m));
  return metrics.back();
}

bool Report::all_pass() const {
  for (const auto& m : metrics) {
    if (m.pass && !*m.pass) return false;
  }
  return true;
}

std::vector<std::string> Report::failures() const {
  std::vector<std::string> out;
  for (const auto& m : metrics) {
    if (m.pass && !*m.pass) out.push_back(m.name + (m.bound ? ": " + *m.bound : ""));
  }
  return out;
}

namespace {

json metric_to_json(const Metric& m) {
  json j{{"name", m.name}, {"value", m.value}, {"mode", m.mode}};
  if (m.exact) j["exact"] = *m.exact;
  if (m.seed) j["seed"] = *m.seed;
  if (m.trials) j["trials"] = *m.trials;
  if (m.std_error) j["stderr"] = *m.std_error;
  if (m.bound) j["bound"] = *m.bound;
  if (m.pass) j["pass"] = *m.pass;
  return j;
}

template <class T>
std::optional<T> opt(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<T>();
}

Metric metric_from_json(const json& j) {
  if (!j.is_object() || !j.contains("name") || !j.contains("value") || !j.contains("mode")) {
    throw ParseError("report metric: requires name, value and mode");
  }
  Metric m;
  m.name = j.at("name").get<std::string>();
  m.value = j.at("value").is_null() ? std::nan("") : j.at("value").get<double>();
  m.mode = j.at("mode").get<std::string>();
  m.exact = opt<std::string>(j, "exact");
  m.seed = opt<std::uint64_t>(j, "seed");
  m.trials = opt<std::uint64_t>(j, "trials");
  m.std_error = opt<double>(j, "stderr");
  m.bound = opt<std::string>(j, "bound");
  m.pass = opt<bool>(j, "pass");
  return m;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

json report_to_json(const Report& report, bool include_timings) {
  json doc;
  doc["schema"] = kReportSchema;
  doc["version"] = kReportVersion;
  doc["command"] = report.command;
  doc["parameters"] = report.parameters;
  json metrics = json::array();
  for (const auto& m : report.metrics) metrics.push_back(metric_to_json(m));
  doc["metrics"] = std::move(metrics);
  doc["details"] = report.details;
  doc["pass"] = report.all_pass();
  if (include_timings) doc["timings"] = report.timings;
  return doc;
}

Report report_from_json(const json& doc) {
  try {
    if (!doc.is_object()) throw ParseError("report: expected a JSON object");
    if (doc.value("schema", std::string()) != kReportSchema) throw ParseError("report: unknown schema");
    if (doc.value("version", 0) != kReportVersion) throw ParseError("report: unsupported version");
    Report r;
    r.command = doc.at("command").get<std::string>();
    r.parameters = doc.at("parameters").get<std::map<std::string, std::string>>();
    for (const auto& m : doc.at("metrics")) r.metrics.push_back(metric_from_json(m));
    r.details = doc.value("details", json::object());
    if (auto it = doc.find("timings"); it != doc.end()) r.timings = it->get<std::map<std::string, double>>();
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
}

std::string serialize_report(const Report& report, bool include_timings) {
  return report_to_json(report, include_timings).dump(2) + "\n";
}

Report parse_report(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("report: malformed JSON: ") + e.what());
  }
  return report_from_json(doc);
}

std::string report_to_csv(const Report& report) {
  std::ostringstream os;
  os << "command,name,value,exact,mode,seed,trials,stderr,bound,pass\n";
  for (const auto& m : report.metrics) {
    os << csv_field(report.command) << ',' << csv_field(m.name) << ',' << fmt(m.value) << ','
       << csv_field(m.exact.value_or("")) << ',' << csv_field(m.mode) << ','
       << (m.seed ? std::to_string(*m.seed) : "") << ',' << (m.trials ? std::to_string(*m.trials) : "") << ','
       << (m.std_error ? fmt(*m.std_error) : "") << ',' << csv_field(m.bound.value_or("")) << ','
       << (m.pass ? (*m.pass ? "true" : "false") : "") << '\n';
  }
  return os.str();
}

void write_report(const Report& report, const std::string& stem) {
  std::ofstream json_out(stem + ".json");
  std::ofstream csv_out(stem + ".csv");
  if (!json_out || !csv_out) throw Error("cannot write report files for '" + stem + "'");
  json_out << serialize_report(report);
  csv_out << report_to_csv(report);
}

}  // namespace smp
