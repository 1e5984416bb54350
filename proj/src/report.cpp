#include "qab/report.hpp"

#include "qab/numeric.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace qab {

Check make_check(std::string name, double residual, double threshold, std::string note) {
  Check c;
  c.name = std::move(name);
  c.residual = residual;
  c.threshold = threshold;
  c.pass = !std::isnan(residual) && residual < threshold;
  c.note = std::move(note);
  return c;
}

Check make_lower_bound_check(std::string name, double value, double threshold, std::string note) {
  Check c;
  c.name = std::move(name);
  c.residual = value;
  c.threshold = threshold;
  c.pass = !std::isnan(value) && value > threshold;
  c.note = note.empty() ? "lower bound: passes when value > threshold" : std::move(note);
  return c;
}

bool VerificationReport::all_pass() const { return qab::all_pass(checks); }

void VerificationReport::append(const std::vector<Check>& more) {
  checks.insert(checks.end(), more.begin(), more.end());
}

double max_residual(const std::vector<Check>& checks) {
  double m = 0.0;
  for (const auto& c : checks) m = std::max(m, c.residual);
  return m;
}

bool all_pass(const std::vector<Check>& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string format_residual(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

nlohmann::json residual_json(double x) {
  if (std::isnan(x) || std::isinf(x)) return format_residual(x);
  return x;
}

double residual_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "nan") return std::nan("");
    return std::stod(s);
  }
  return j.get<double>();
}

}  // namespace

nlohmann::json to_json(const VerificationReport& r, bool include_timing) {
  nlohmann::json j;
  j["schema_version"] = r.schema_version;
  j["suite"] = r.suite;
  j["software_version"] = r.software_version;
  j["config"] = r.config;
  j["parameters"] = r.parameters;
  j["pass"] = r.all_pass();
  auto& arr = j["checks"] = nlohmann::json::array();
  for (const auto& c : r.checks) {
    nlohmann::json cj;
    cj["suite"] = c.suite;
    cj["check"] = c.name;
    cj["M"] = c.M;
    cj["residual"] = residual_json(c.residual);
    cj["threshold"] = c.threshold;
    cj["pass"] = c.pass;
    if (!c.note.empty()) cj["note"] = c.note;
    arr.push_back(std::move(cj));
  }
  if (!r.extra.is_null()) j["extra"] = r.extra;
  if (include_timing) j["wall_time_seconds"] = r.wall_time_seconds;
  return j;
}

VerificationReport report_from_json(const nlohmann::json& j) {
  VerificationReport r;
  r.schema_version = j.at("schema_version").get<int>();
  r.suite = j.at("suite").get<std::string>();
  r.software_version = j.value("software_version", "");
  r.config = j.value("config", nlohmann::json());
  r.parameters = j.value("parameters", nlohmann::json());
  for (const auto& cj : j.at("checks")) {
    Check c;
    c.suite = cj.at("suite").get<std::string>();
    c.name = cj.at("check").get<std::string>();
    c.M = cj.at("M").get<std::vector<int>>();
    c.residual = residual_from_json(cj.at("residual"));
    c.threshold = cj.at("threshold").get<double>();
    c.pass = cj.at("pass").get<bool>();
    c.note = cj.value("note", "");
    r.checks.push_back(std::move(c));
  }
  if (j.contains("extra")) r.extra = j["extra"];
  r.wall_time_seconds = j.value("wall_time_seconds", 0.0);
  return r;
}

std::string to_csv_summary(const VerificationReport& r) {
  std::ostringstream out;
  out << "suite,check,M,residual,threshold,pass\n";
  for (const auto& c : r.checks) {
    std::string m;
    for (std::size_t i = 0; i < c.M.size(); ++i) m += (i ? "x" : "") + std::to_string(c.M[i]);
    out << c.suite << ',' << c.name << ',' << m << ',' << format_residual(c.residual) << ','
        << format_residual(c.threshold) << ',' << (c.pass ? "true" : "false") << '\n';
  }
  return out.str();
}

void emit_report(const VerificationReport& r, const std::string& format, const std::string& path) {
  std::string text;
  if (format == "json") {
    text = to_json(r).dump(2) + "\n";
  } else if (format == "csv-summary") {
    text = to_csv_summary(r);
  } else {
    throw QabError("unknown report format: " + format);
  }
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw QabError("cannot open report file: " + path);
  f << text;
  if (!f) throw QabError("failed writing report file: " + path);
}

}  // namespace qab
