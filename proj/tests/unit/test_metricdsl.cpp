#include <doctest.h>

#include <cmath>
#include <sstream>

#include <conflab/errors.hpp>
#include <conflab/expr.hpp>
#include <conflab/metric.hpp>

#include "test_support.hpp"

using namespace conflab;

namespace {

struct CorpusEntry {
  std::string name;
  std::string text;
  std::vector<double> point;
};

std::vector<double> read_point(const std::string& text) {
  auto pos = text.find("# at:");
  REQUIRE(pos != std::string::npos);
  auto end = text.find('\n', pos);
  std::istringstream is(text.substr(pos + 5, end - pos - 5));
  std::vector<double> p;
  double v;
  while (is >> v) p.push_back(v);
  return p;
}

std::vector<CorpusEntry> corpus() {
  std::vector<CorpusEntry> out;
  for (const auto& path : testsupport::files_with_extension(testsupport::data_dir() / "metrics", ".metric")) {
    auto text = testsupport::read_file(path);
    out.push_back({path.filename().string(), text, read_point(text)});
  }
  return out;
}

int parse_error_column(const std::string& text, int* line = nullptr) {
  try {
    parse_metric(text);
  } catch (const ParseError& e) {
    if (line) *line = e.line();
    return e.column();
  }
  return -1;
}

double central_difference(const Expr& e, std::vector<double> x, int k, double h) {
  const double x0 = x[static_cast<std::size_t>(k)];
  x[static_cast<std::size_t>(k)] = x0 + h;
  const double fp = evaluate(e, x);
  x[static_cast<std::size_t>(k)] = x0 - h;
  const double fm = evaluate(e, x);
  return (fp - fm) / (2 * h);
}

}  // namespace

TEST_CASE("corpus has at least 20 files and covers every builtin") {
  auto c = corpus();
  CHECK(c.size() >= 20);
  for (const auto& name : builtin_metric_names()) {
    bool found = false;
    for (const auto& e : c)
      if (e.name == "builtin_" + name + ".metric") {
        found = true;
        CHECK(parse_metric(e.text) == builtin_metric(name));
      }
    CHECK_MESSAGE(found, name);
  }
}

TEST_CASE("corpus round trip through the printer") {
  for (const auto& e : corpus()) {
    CAPTURE(e.name);
    auto m = parse_metric(e.text);
    auto printed = print_metric(m);
    auto again = parse_metric(printed);
    CHECK(again == m);
    CHECK(print_metric(again) == printed);
    CHECK(static_cast<int>(e.point.size()) == m.dim());
  }
}

TEST_CASE("symbolic first derivatives agree with central differences") {
  const double h = 1e-5;
  for (const auto& e : corpus()) {
    CAPTURE(e.name);
    auto m = parse_metric(e.text);
    for (int i = 0; i < m.dim(); ++i)
      for (int j = i; j < m.dim(); ++j)
        for (int k = 0; k < m.dim(); ++k) {
          const double sym = evaluate(differentiate(m.g(i, j), k), e.point);
          const double fd = central_difference(m.g(i, j), e.point, k, h);
          CHECK(std::abs(sym - fd) <= 1e-6 * std::max(1.0, std::abs(sym)));
        }
  }
}

TEST_CASE("symbolic second derivatives agree with differences of first derivatives") {
  const double h = 1e-5;
  for (const auto& e : corpus()) {
    CAPTURE(e.name);
    auto m = parse_metric(e.text);
    for (int i = 0; i < m.dim(); ++i)
      for (int j = i; j < m.dim(); ++j)
        for (int k = 0; k < m.dim(); ++k) {
          auto dk = differentiate(m.g(i, j), k);
          for (int l = 0; l < m.dim(); ++l) {
            const double sym = evaluate(differentiate(dk, l), e.point);
            const double fd = central_difference(dk, e.point, l, h);
            CHECK(std::abs(sym - fd) <= 1e-6 * std::max(1.0, std::abs(sym)));
          }
        }
  }
}

TEST_CASE("builtins load by name") {
  for (const auto& name : builtin_metric_names()) {
    auto m = load_metric(name);
    CHECK(m == builtin_metric(name));
    CHECK(parse_metric(builtin_metric_source(name)) == m);
  }
  CHECK(builtin_metric("ppwave-x2").dim() == 4);
  CHECK(builtin_metric("hopf3").chart().coords == std::vector<std::string>{"x1", "x2", "x3"});
}

TEST_CASE("metric files load by path") {
  auto path = testsupport::data_dir() / "metrics" / "schwarzschild.metric";
  auto m = load_metric(path.string());
  CHECK(m.dim() == 4);
  CHECK_THROWS_AS(load_metric("no-such-metric-or-file"), Error);
}

TEST_CASE("symmetric assignment") {
  auto m = parse_metric("dim 3; coords a b c; g[1,3] = a; g[2,2] = 1;");
  CHECK(m.g(0, 2) == m.g(2, 0));
  CHECK(m.g(2, 0) == m.coordinate(0));
  CHECK(m.g(0, 0).is_num(0));
}

TEST_CASE("repeated assignment rules") {
  CHECK_NOTHROW(parse_metric("dim 3; coords a b c; g[1,1]=a; g[1,1]=a;"));
  CHECK_NOTHROW(parse_metric("dim 3; coords a b c; g[1,2]=a; g[2,1]=a;"));
  CHECK_THROWS_AS(parse_metric("dim 3; coords a b c; g[1,1]=a; g[1,1]=b;"), ParseError);
}

TEST_CASE("parse errors carry line and column") {
  int line = 0;
  CHECK(parse_error_column("dim 3;\ncoords t x y;\ng[1,1] = -(1 + x;\n", &line) == 17);
  CHECK(line == 3);
  CHECK(parse_error_column("dim 2; coords a b;") == 5);
  CHECK(parse_error_column("dim 3; coords a b a;") == 19);
  CHECK(parse_error_column("dim 3; coords a b c; g[4,1] = 1;") == 24);
  CHECK(parse_error_column("dim 3; coords a b c; g[1,1] = q;") == 31);
  CHECK(parse_error_column("dim 3; coords a b c; g[1,1] = a^b;") == 32);
  CHECK(parse_error_column("dim 3; coords a b c; g[1,1] = a/0;") == 32);
  CHECK(parse_error_column("dim 3; coords a b c; h[1,1] = 1;") == 22);
  CHECK(parse_error_column("dim 3; coords a b c; g[1,1] = 1 $") == 33);
  CHECK(parse_error_column("dim 3; coords a sin c;") == 17);
  CHECK(parse_error_column("coords a b c;") == 1);
}

TEST_CASE("exact literal reading") {
  auto e = parse_expr("0.125 + 2.5e-1 + 1e1", {"x"});
  REQUIRE(e.is_num());
  CHECK(e.value() == Rational(83, 8));
  CHECK(parse_expr("0.05", {"x"}).value() == Rational(1, 20));
  CHECK(parse_expr("007", {"x"}).value() == 7);
  CHECK(parse_expr("3.0e-02", {"x"}).value() == Rational(3, 100));
}

TEST_CASE("constant folding and identities") {
  std::vector<std::string> c{"x", "y"};
  CHECK(parse_expr("2*3 - 6", c).is_num(0));
  CHECK(parse_expr("x*1 + 0", c) == parse_expr("x", c));
  CHECK(parse_expr("x*0", c).is_num(0));
  CHECK(parse_expr("x^1", c) == parse_expr("x", c));
  CHECK(parse_expr("x^0", c).is_num(1));
  CHECK(parse_expr("-(-x)", c) == parse_expr("x", c));
  CHECK(parse_expr("x^(1+1)", c) == parse_expr("x^2", c));
  // No further simplification.
  CHECK(parse_expr("x + x", c) != parse_expr("2*x", c));
}

TEST_CASE("power is right associative and binds tighter than unary minus") {
  std::vector<std::string> c{"x"};
  CHECK(evaluate(parse_expr("2^3^2", c), {0}) == doctest::Approx(512));
  CHECK(evaluate(parse_expr("-x^2", c), {3}) == doctest::Approx(-9));
  CHECK(evaluate(parse_expr("x^-2", c), {2}) == doctest::Approx(0.25));
}

TEST_CASE("expression printing round trips") {
  std::vector<std::string> c{"u", "v"};
  for (const char* s : {"exp(u)*sin(v) - cos(u)/v", "sqrt(u^2 + 1)*log(v)", "-(u - v)^3/(1 + u)", "u^-2 + 3/7"}) {
    auto e = parse_expr(s, c);
    CHECK(parse_expr(to_string(e), c) == e);
  }
}

TEST_CASE("derivative rules") {
  std::vector<std::string> c{"x", "y"};
  auto d = [&](const char* s, int k) { return differentiate(parse_expr(s, c), k); };
  std::vector<double> p{0.7, 1.3};
  CHECK(evaluate(d("sin(x)*exp(y)", 0), p) == doctest::Approx(std::cos(0.7) * std::exp(1.3)));
  CHECK(evaluate(d("log(x*y)", 1), p) == doctest::Approx(1 / 1.3));
  CHECK(evaluate(d("sqrt(x)", 0), p) == doctest::Approx(0.5 / std::sqrt(0.7)));
  CHECK(evaluate(d("x^3/y", 0), p) == doctest::Approx(3 * 0.49 / 1.3));
  CHECK(evaluate(d("cos(x^2)", 0), p) == doctest::Approx(-std::sin(0.49) * 1.4));
  CHECK(d("y^2", 0).is_num(0));
}

TEST_CASE("evaluation errors") {
  std::vector<std::string> c{"x"};
  CHECK_THROWS_AS(evaluate(parse_expr("1/x", c), {0.0}), Error);
  CHECK_THROWS_AS(evaluate(parse_expr("sqrt(x)", c), {-1.0}), Error);
  CHECK_THROWS_AS(evaluate(parse_expr("log(x)", c), {0.0}), Error);
}

TEST_CASE("spec construction validation") {
  CHECK_THROWS_AS(MetricSpec(Chart{2, {"a", "b"}}), Error);
  CHECK_THROWS_AS(MetricSpec(Chart{3, {"a", "b"}}), Error);
  CHECK_THROWS_AS(MetricSpec(Chart{3, {"a", "b", "a"}}), Error);
}

TEST_CASE("conformal rescale multiplies every component") {
  auto g = builtin_metric("minkowski3");
  auto phi = parse_expr("exp(x)", g.chart().coords);
  auto r = conformal_rescale(g, phi);
  std::vector<double> p{0.1, 0.4, -0.2};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(evaluate(r.g(i, j), p) == doctest::Approx(std::exp(0.4) * evaluate(g.g(i, j), p)));
}

TEST_CASE("signature any flag survives printing") {
  auto m = parse_metric("dim 3; coords a b c; g[1,1]=1; g[2,2]=1; g[3,3]=1; signature any;");
  CHECK(m.general_signature());
  CHECK(parse_metric(print_metric(m)).general_signature());
}
