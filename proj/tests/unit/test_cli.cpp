#include <doctest.h>

#include <algorithm>

#include <conflab/errors.hpp>
#include <conflab/repclass.hpp>

#include "conflab_tools/report.hpp"
#include "conflab_tools/suites.hpp"

using namespace conflab;
using namespace conflab::tools;

namespace {

std::string stable_json(const std::string& suite, const SuiteOptions& o) {
  auto r = run_suite(suite, o);
  r.duration.reset();
  return to_json(r).dump();
}

const Check* find(const Report& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("suite registry") {
  for (const char* s : {"liealg", "repclass", "curvature", "modelspaces", "lyapunov", "periodic", "holonomy",
                        "centralizer"})
    CHECK(is_suite(s));
  CHECK(is_suite("all"));
  CHECK_FALSE(is_suite("no-such-suite"));
  CHECK_THROWS_AS(run_suite("no-such-suite", {}), Error);
}

TEST_CASE("reports are byte-identical for a fixed seed") {
  SuiteOptions o;
  o.seed = 17;
  CHECK(stable_json("holonomy", o) == stable_json("holonomy", o));
  CHECK(stable_json("centralizer", o) == stable_json("centralizer", o));
  CHECK(stable_json("lyapunov", o) == stable_json("lyapunov", o));
}

TEST_CASE("JSON document shape") {
  auto r = run_suite("periodic", {});
  auto j = to_json(r);
  CHECK(j["schema"] == 1);
  CHECK(j["suite"] == "periodic");
  CHECK(j.contains("duration_seconds"));
  r.duration.reset();
  j = to_json(r);
  CHECK_FALSE(j.contains("duration_seconds"));
  REQUIRE(j["checks"].is_array());
  std::string prev;
  for (const auto& c : j["checks"]) {
    CHECK(c["name"].get<std::string>() > prev);
    prev = c["name"].get<std::string>();
    const auto prov = c["provenance"].get<std::string>();
    CHECK((prov == "published" || prov == "identity" || prov == "derived"));
    const auto st = c["status"].get<std::string>();
    CHECK((st == "pass" || st == "fail" || st == "flagged"));
  }
}

TEST_CASE("lyapunov suite reports the expected exponents") {
  auto r = run_suite("lyapunov", {});
  CHECK(r.passed());
  const auto* e1 = find(r, "exponent_1");
  REQUIRE(e1 != nullptr);
  CHECK(e1->expected == -1.0);
  CHECK(e1->tolerance == 1e-2);
  CHECK(e1->provenance == Provenance::Published);
}

TEST_CASE("tolerance override propagates") {
  SuiteOptions o;
  o.tolerance = 0.0;
  auto r = run_suite("lyapunov", o);
  CHECK_FALSE(r.passed());
  CHECK(find(r, "exponent_0")->tolerance == 0.0);
  CHECK(find(r, "zero_exponents")->status == Status::Fail);
}

TEST_CASE("curvature suite flags the pp-wave") {
  SuiteOptions o;
  o.metric = "ppwave-x2";
  o.point = std::vector<double>{0, 0, 0, 0};
  auto r = run_suite("curvature", o);
  CHECK(r.passed());
  const auto* c = find(r, "metric.conformal_flatness");
  REQUIRE(c != nullptr);
  CHECK(c->status == Status::Flagged);
  CHECK(c->measured.get<double>() > 1e-3);

  o.metric = "minkowski4";
  auto flat = run_suite("curvature", o);
  CHECK(find(flat, "metric.conformal_flatness")->status == Status::Pass);
}

TEST_CASE("curvature suite propagates parse errors") {
  SuiteOptions o;
  o.metric = std::string(CONFLAB_TEST_DATA_DIR) + "/bad/unterminated.metric";
  CHECK_THROWS_AS(run_suite("curvature", o), ParseError);
}

TEST_CASE("curvature suite rejects a point of the wrong size") {
  SuiteOptions o;
  o.metric = "minkowski3";
  o.point = std::vector<double>{0, 0};
  CHECK_THROWS_AS(run_suite("curvature", o), Error);
}

TEST_CASE("repclass single case and single d") {
  SuiteOptions o;
  o.case_label = "2b";
  o.n = 5;
  auto r = run_suite("repclass", o);
  CHECK(r.passed());
  CHECK(find(r, "case_" + to_string(CaseLabel::Lorentz3_SecondBlock) + ".label.n5") != nullptr);
  SuiteOptions d;
  d.d = 4;
  auto rd = run_suite("repclass", d);
  CHECK(rd.passed());
  CHECK(find(rd, "irreducible.d4.form_minor_index")->measured == 2);
}

TEST_CASE("holonomy modes") {
  SuiteOptions o;
  o.holonomy_mode = "obstruction";
  auto r = run_suite("holonomy", o);
  CHECK(r.passed());
  for (const auto& c : r.checks) CHECK(c.name.rfind("obstruction.", 0) == 0);
  o.holonomy_mode = "bogus";
  CHECK_THROWS_AS(run_suite("holonomy", o), Error);
}

TEST_CASE("all merges every suite with prefixes") {
  auto r = run_suite("all", {});
  CHECK(r.passed());
  for (const auto& name : suite_names()) {
    const bool present = std::any_of(r.checks.begin(), r.checks.end(),
                                     [&](const Check& c) { return c.name.rfind(name + ".", 0) == 0; });
    CHECK_MESSAGE(present, name);
  }
}

TEST_CASE("table rendering lists every check") {
  auto r = run_suite("periodic", {});
  const auto t = render_table(r);
  for (const auto& c : r.checks) CHECK(t.find(c.name) != std::string::npos);
  CHECK(t.find("provenance") != std::string::npos);
}
