#include "conflab_tools/report.hpp"

#include <algorithm>
#include <cmath>
#include <array>
#include <iomanip>
#include <sstream>

namespace conflab::tools {

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Flagged: return "flagged";
  }
  return "fail";
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Published: return "published";
    case Provenance::Identity: return "identity";
    case Provenance::Derived: return "derived";
  }
  return "identity";
}

bool Report::passed() const { return count(Status::Fail) == 0; }

std::size_t Report::count(Status s) const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [s](const Check& c) { return c.status == s; }));
}

Check& Report::close(const std::string& name, double measured, double expected, double tolerance, Provenance p) {
  const bool ok = std::isfinite(measured) && std::abs(measured - expected) <= tolerance;
  checks.push_back({name, ok ? Status::Pass : Status::Fail, measured, expected, tolerance, p, {}});
  return checks.back();
}

Check& Report::at_most(const std::string& name, double measured, double bound, Provenance p) {
  const bool ok = std::isfinite(measured) && measured <= bound;
  checks.push_back({name, ok ? Status::Pass : Status::Fail, measured, "<= bound", bound, p, {}});
  return checks.back();
}

Check& Report::at_least(const std::string& name, double measured, double bound, Provenance p) {
  const bool ok = std::isfinite(measured) && measured >= bound;
  checks.push_back({name, ok ? Status::Pass : Status::Fail, measured, ">= bound", bound, p, {}});
  return checks.back();
}

Check& Report::equal(const std::string& name, long long measured, long long expected, Provenance p) {
  checks.push_back({name, measured == expected ? Status::Pass : Status::Fail, measured, expected, 0, p, {}});
  return checks.back();
}

Check& Report::holds(const std::string& name, bool ok, Provenance p, const std::string& note) {
  checks.push_back({name, ok ? Status::Pass : Status::Fail, ok, true, 0, p, note});
  return checks.back();
}

Check& Report::error(const std::string& name, const std::string& message) {
  checks.push_back({name, Status::Fail, nullptr, nullptr, 0, Provenance::Identity, message});
  return checks.back();
}

void Report::merge(const Report& other) {
  for (auto c : other.checks) {
    c.name = other.suite + "." + c.name;
    checks.push_back(std::move(c));
  }
}

void Report::sort_checks() {
  std::stable_sort(checks.begin(), checks.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
}

nlohmann::json to_json(Report report) {
  report.sort_checks();
  nlohmann::json j;
  j["schema"] = 1;
  j["suite"] = report.suite;
  j["passed"] = report.passed();
  j["summary"] = {{"pass", report.count(Status::Pass)},
                  {"fail", report.count(Status::Fail)},
                  {"flagged", report.count(Status::Flagged)}};
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : report.checks) {
    nlohmann::json o{{"name", c.name},
                     {"status", to_string(c.status)},
                     {"measured", c.measured},
                     {"expected", c.expected},
                     {"tolerance", c.tolerance},
                     {"provenance", to_string(c.provenance)}};
    if (!c.note.empty()) o["note"] = c.note;
    arr.push_back(std::move(o));
  }
  j["checks"] = std::move(arr);
  if (report.duration) j["duration_seconds"] = *report.duration;
  return j;
}

namespace {

std::string cell(const nlohmann::json& v) {
  if (v.is_number_float()) {
    std::ostringstream os;
    os << std::setprecision(10) << v.get<double>();
    return os.str();
  }
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace

std::string render_table(Report report) {
  report.sort_checks();
  std::vector<std::array<std::string, 6>> rows;
  rows.push_back({"check", "status", "measured", "expected", "tolerance", "provenance"});
  for (const auto& c : report.checks)
    rows.push_back({c.name, to_string(c.status), cell(c.measured), cell(c.expected), cell(nlohmann::json(c.tolerance)),
                    to_string(c.provenance)});
  std::array<std::size_t, 6> width{};
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  std::ostringstream os;
  os << "suite " << report.suite << ": " << report.count(Status::Pass) << " pass, " << report.count(Status::Fail)
     << " fail, " << report.count(Status::Flagged) << " flagged\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << std::left << std::setw(static_cast<int>(width[i]) + 2) << r[i];
    os << "\n";
  }
  for (const auto& c : report.checks)
    if (!c.note.empty()) os << "  " << c.name << ": " << c.note << "\n";
  if (report.duration) os << "duration " << std::setprecision(3) << *report.duration << " s\n";
  return os.str();
}

}  // namespace conflab::tools
