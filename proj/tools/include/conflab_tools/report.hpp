#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

namespace conflab::tools {

enum class Status { Pass, Fail, Flagged };

/// Where an expected value comes from: a published constant, an algebraic
/// identity, or an independently derived oracle.
enum class Provenance { Published, Identity, Derived };

std::string to_string(Status s);
std::string to_string(Provenance p);

struct Check {
  std::string name;
  Status status = Status::Fail;
  nlohmann::json measured;
  nlohmann::json expected;
  double tolerance = 0;
  Provenance provenance = Provenance::Identity;
  std::string note;
};

struct Report {
  std::string suite;
  std::vector<Check> checks;
  /// Wall-clock seconds; serialized only when set.
  std::optional<double> duration;

  bool passed() const;
  std::size_t count(Status s) const;

  /// |measured - expected| <= tolerance.
  Check& close(const std::string& name, double measured, double expected, double tolerance, Provenance p);
  /// measured <= bound.
  Check& at_most(const std::string& name, double measured, double bound, Provenance p);
  /// measured >= bound.
  Check& at_least(const std::string& name, double measured, double bound, Provenance p);
  /// Exact equality of integers.
  Check& equal(const std::string& name, long long measured, long long expected, Provenance p);
  Check& holds(const std::string& name, bool ok, Provenance p, const std::string& note = {});
  /// A failure raised while computing a check.
  Check& error(const std::string& name, const std::string& message);

  /// Appends the checks of another report with its suite name as a prefix.
  void merge(const Report& other);
  void sort_checks();
};

/// Schema 1 document. Checks are sorted by name.
nlohmann::json to_json(Report report);
std::string render_table(Report report);

}  // namespace conflab::tools
