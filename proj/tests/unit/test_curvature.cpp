#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <conflab/curvature.hpp>
#include <conflab/errors.hpp>

#include "test_support.hpp"

using namespace conflab;

namespace {

std::vector<double> random_point(std::mt19937_64& rng, int dim, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> p(static_cast<std::size_t>(dim));
  for (auto& x : p) x = u(rng);
  return p;
}

struct OracleComponent {
  int l, i, j, k;
  double value;
};

std::vector<OracleComponent> ppwave_oracle() {
  std::ifstream in(testsupport::oracle_dir() / "ppwave_weyl_origin.txt");
  std::vector<OracleComponent> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream is(line);
    OracleComponent c{};
    std::string value;
    is >> c.l >> c.i >> c.j >> c.k >> value;
    c.value = parse_rational(value).get_d();
    out.push_back(c);
  }
  return out;
}

double kretschmann(const CurvatureReport& r) {
  const int n = r.dim;
  double k = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double up = 0;
          for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
              for (int s = 0; s < n; ++s)
                for (int t = 0; t < n; ++t)
                  up += r.inverse_metric(a, p) * r.inverse_metric(b, q) * r.inverse_metric(c, s) *
                        r.inverse_metric(d, t) * r.riemann_down(p, q, s, t);
          k += r.riemann_down(a, b, c, d) * up;
        }
  return k;
}

}  // namespace

TEST_CASE("Weyl vanishes on flat Minkowski space at random points") {
  auto g = builtin_metric("minkowski4");
  CurvatureEngine eng(g);
  std::mt19937_64 rng(1);
  for (int s = 0; s < 100; ++s) {
    auto r = eng.report(random_point(rng, 4, -5, 5));
    CHECK(r.weyl.max_abs() < 1e-10);
    CHECK(r.riemann.max_abs() < 1e-10);
    CHECK(r.conformally_flat);
  }
}

TEST_CASE("Hopf chart is conformally flat at random points") {
  CurvatureEngine eng(builtin_metric("hopf3"));
  std::mt19937_64 rng(2);
  for (int s = 0; s < 100; ++s) {
    auto r = eng.report(random_point(rng, 3, -3, 3));
    CHECK(r.weyl.max_abs() < 1e-10);
    CHECK(r.cotton.max_abs() < 1e-10);
    CHECK(r.conformally_flat);
  }
}

TEST_CASE("Cotton vanishes on conformally flat 3-dimensional charts") {
  std::mt19937_64 rng(3);
  for (const char* name : {"minkowski3", "einstein-static3"}) {
    CurvatureEngine eng(builtin_metric(name));
    for (int s = 0; s < 25; ++s) {
      auto p = random_point(rng, 3, 0.3, 1.2);
      auto r = eng.report(p);
      CHECK(r.cotton.max_abs() < 1e-10);
    }
  }
  auto conf = load_metric((testsupport::data_dir() / "metrics" / "conformal_minkowski3.metric").string());
  CHECK(cotton(conf, {0.3, -0.4, 0.9}).max_abs() < 1e-10);
}

TEST_CASE("pp-wave Weyl components match the symbolic oracle") {
  auto r = curvature(builtin_metric("ppwave-x2"), {0, 0, 0, 0});
  CHECK(r.max_abs_weyl_cotton > 1e-3);
  CHECK_FALSE(r.conformally_flat);
  auto oracle = ppwave_oracle();
  REQUIRE(oracle.size() == 8);
  Tensor e(4, 4);
  for (const auto& c : oracle) e(c.l, c.i, c.j, c.k) = c.value;
  CHECK(testsupport::max_abs_diff(r.weyl.data(), e.data()) < 1e-8);
}

TEST_CASE("pp-wave Weyl is independent of position") {
  CurvatureEngine eng(builtin_metric("ppwave-x2"));
  auto at0 = eng.report({0, 0, 0, 0});
  auto at1 = eng.report({0.4, -1.2, 2.0, 0.3});
  CHECK(testsupport::max_abs_diff(at0.weyl.data(), at1.weyl.data()) < 1e-10);
}

TEST_CASE("(3,1) Weyl is invariant under conformal rescaling") {
  struct Case {
    const char* metric;
    const char* phi;
    std::vector<double> p;
  };
  std::vector<Case> cases{
      {"ppwave-x2", "exp(u + x)/(1 + y^2)", {0.3, -0.2, 0.5, 0.4}},
      {"ppwave-x2", "1 + x^2 + v^2", {0.1, 0.7, -0.3, 0.2}},
      {"minkowski4", "exp(2*t)*cos(x)", {0.2, 0.1, 0.3, 0.4}},
  };
  for (const auto& c : cases) {
    auto g = builtin_metric(c.metric);
    auto phi = parse_expr(c.phi, g.chart().coords);
    auto w0 = weyl(g, c.p);
    auto w1 = weyl(conformal_rescale(g, phi), c.p);
    CHECK(testsupport::max_abs_diff(w0.data(), w1.data()) < 1e-8);
  }
  auto schw = load_metric((testsupport::data_dir() / "metrics" / "schwarzschild.metric").string());
  auto phi = parse_expr("r^2*exp(t/3)", schw.chart().coords);
  std::vector<double> p{0.2, 4.0, 1.0, 0.3};
  CHECK(testsupport::max_abs_diff(weyl(schw, p).data(), weyl(conformal_rescale(schw, phi), p).data()) < 1e-8);
}

TEST_CASE("Schwarzschild is Ricci flat with Kretschmann 48/r^6") {
  auto g = load_metric((testsupport::data_dir() / "metrics" / "schwarzschild.metric").string());
  for (double r : {3.0, 4.5, 7.0}) {
    auto rep = curvature(g, {0.0, r, 1.1, 0.4});
    CHECK(rep.ricci.max_abs() < 1e-10);
    CHECK(kretschmann(rep) == doctest::Approx(48 / std::pow(r, 6)).epsilon(1e-9));
    CHECK_FALSE(rep.conformally_flat);
  }
}

TEST_CASE("static de Sitter has Ric = 3 g") {
  auto g = load_metric((testsupport::data_dir() / "metrics" / "desitter_static.metric").string());
  auto rep = curvature(g, {0.4, 0.3, 1.0, 2.0});
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(rep.ricci(i, j) == doctest::Approx(3 * rep.metric(i, j)).epsilon(1e-10));
  CHECK(rep.scalar == doctest::Approx(12));
  CHECK(rep.conformally_flat);
}

TEST_CASE("Christoffel symbols of the static Einstein chart") {
  auto gam = christoffel(builtin_metric("einstein-static3"), {0.0, 0.8, 0.1});
  CHECK(gam(1, 2, 2) == doctest::Approx(-std::sin(0.8) * std::cos(0.8)));
  CHECK(gam(2, 1, 2) == doctest::Approx(std::cos(0.8) / std::sin(0.8)));
  CHECK(gam(2, 2, 1) == doctest::Approx(gam(2, 1, 2)));
  CHECK(gam(0, 0, 0) == 0);
}

TEST_CASE("metric compatibility and Bianchi symmetries") {
  auto g = load_metric((testsupport::data_dir() / "metrics" / "log_warped4.metric").string());
  auto r = curvature(g, {0.3, 2.0, 0.1, 0.1});
  CHECK(r.compatibility_residual < 1e-10);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          CHECK(r.riemann_down(i, j, k, l) == doctest::Approx(-r.riemann_down(j, i, k, l)).epsilon(1e-9).scale(1));
          CHECK(r.riemann_down(i, j, k, l) == doctest::Approx(r.riemann_down(k, l, i, j)).epsilon(1e-9).scale(1));
          const double cyc = r.riemann_down(i, j, k, l) + r.riemann_down(j, k, i, l) + r.riemann_down(k, i, j, l);
          CHECK(std::abs(cyc) < 1e-9);
        }
  // Weyl is trace free.
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) {
      double tr = 0;
      for (int i = 0; i < 4; ++i) tr += r.weyl(i, i, j, k);
      CHECK(std::abs(tr) < 1e-9);
    }
}

TEST_CASE("singular and wrong-signature metrics raise") {
  auto sing = parse_metric("dim 4; coords t x y z; g[1,1]=-1; g[2,2]=x; g[3,3]=1; g[4,4]=1;");
  CHECK_THROWS_AS(curvature(sing, {0, 0, 0, 0}), EvaluationError);
  try {
    curvature(sing, {0, 0, 0, 0});
  } catch (const EvaluationError& e) {
    CHECK(e.determinant() == 0);
  }
  auto riem = parse_metric("dim 3; coords a b c; g[1,1]=1; g[2,2]=1; g[3,3]=1;");
  CHECK_THROWS_AS(curvature(riem, {0, 0, 0}), Error);
  riem.set_general_signature(true);
  CHECK_NOTHROW(curvature(riem, {0, 0, 0}));
}

TEST_CASE("dimension restrictions of weyl and cotton") {
  CHECK_THROWS_AS(weyl(builtin_metric("minkowski3"), {0, 0, 0}), Error);
  CHECK_THROWS_AS(cotton(builtin_metric("minkowski4"), {0, 0, 0, 0}), Error);
}

TEST_CASE("conformal Killing residual") {
  auto g = builtin_metric("minkowski3");
  auto t = g.coordinate(0), x = g.coordinate(1), y = g.coordinate(2);
  std::vector<double> p{0.3, -0.7, 1.1};
  // boost, rotation, dilation and a special conformal field
  CHECK(conformal_killing_residual(g, {x, t, Expr::num(0)}, p) < 1e-12);
  CHECK(conformal_killing_residual(g, {Expr::num(0), -y, x}, p) < 1e-12);
  CHECK(conformal_killing_residual(g, {t, x, y}, p) < 1e-12);
  // 2 <b, x> x - <x, x> b with b = d/dt
  auto q = -t * t + x * x + y * y;
  auto two = Expr::num(2);
  CHECK(conformal_killing_residual(g, {-two * t * t - q, -two * t * x, -two * t * y}, p) < 1e-12);
  CHECK(conformal_killing_residual(g, {x * x, Expr::num(0), Expr::num(0)}, p) > 1e-3);
}

TEST_CASE("corpus flatness verdicts") {
  // Known answers for the corpus charts at their sample points.
  const std::vector<std::pair<std::string, bool>> expected{
      {"btz_like3", true},        {"conformal_minkowski3", true}, {"desitter_static", true},
      {"einstein_static4", true}, {"frw_exponential", true},      {"frw_radiation", true},
      {"rindler", true},          {"rotating_frame3", true},      {"schwarzschild", false},
      {"ppwave_xy", false},       {"plane_wave_sin", false},      {"godel_like3", false},
  };
  for (const auto& [name, flat] : expected) {
    CAPTURE(name);
    auto path = testsupport::data_dir() / "metrics" / (name + ".metric");
    auto text = testsupport::read_file(path);
    auto pos = text.find("# at:");
    std::istringstream is(text.substr(pos + 5, text.find('\n', pos) - pos - 5));
    std::vector<double> p;
    double v;
    while (is >> v) p.push_back(v);
    CHECK(curvature(parse_metric(text), p).conformally_flat == flat);
  }
}
