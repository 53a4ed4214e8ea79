#include <doctest.h>

#include <cmath>
#include <numeric>

#include <conflab/dynamics.hpp>
#include <conflab/errors.hpp>
#include <conflab/modelspaces.hpp>

using namespace conflab;

namespace {

const double kLn2 = std::log(2.0);

ExactMatrix hyperbolic_generator() { return ExactMatrix{{1, 0, 0}, {0, 0, 0}, {0, 0, -1}}; }

FlowSpec hopf_flow() { return HopfModel::make(2).flow(hyperbolic_generator()); }

}  // namespace

TEST_CASE("linear flow integration") {
  auto p = integrate(FlowSpec::linear(hyperbolic_generator()), {1, 0, 1}, kLn2);
  CHECK(p[0] == doctest::Approx(2));
  CHECK(std::abs(p[1]) < 1e-14);
  CHECK(p[2] == doctest::Approx(0.5));
  auto q = integrate(hopf_flow(), {1, 0, 1}, kLn2);
  CHECK(q[0] == doctest::Approx(1));
  CHECK(q[2] == doctest::Approx(0.25));
}

TEST_CASE("field conventions are opposite") {
  auto m = FlowSpec::linear(hyperbolic_generator(), FieldConvention::Matrix);
  auto p = FlowSpec::linear(hyperbolic_generator(), FieldConvention::Paper);
  auto a = integrate(m, {1, 2, 3}, 0.3), b = integrate(p, {1, 2, 3}, -0.3);
  for (int i = 0; i < 3; ++i) CHECK(a[static_cast<std::size_t>(i)] == doctest::Approx(b[static_cast<std::size_t>(i)]));
  CHECK(p.field({1, 0, 0})[0] == doctest::Approx(-1));
}

TEST_CASE("chart flow matches the matrix exponential") {
  auto g = builtin_metric("hopf3");
  So12Fields f;
  f.convention = FieldConvention::Matrix;
  ExactMatrix a{{Rational(1, 2), 1, 0}, {0, 0, -1}, {0, 0, Rational(-1, 2)}};
  auto chart = FlowSpec::chart(f.field_exprs(a, g));
  auto lin = FlowSpec::linear(a);
  Point x0{0.3, -0.8, 1.1};
  auto rc = advance(chart, x0, 1.7), rl = advance(lin, x0, 1.7);
  for (std::size_t i = 0; i < 3; ++i) CHECK(rc.x[i] == doctest::Approx(rl.x[i]).epsilon(1e-9));
  CHECK((rc.jacobian - rl.jacobian).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("chart rotation flow") {
  auto mk = builtin_metric("minkowski3");
  auto rot = FlowSpec::chart({Expr::num(0), -mk.coordinate(2), mk.coordinate(1)});
  auto q = integrate(rot, {1, 1, 0}, M_PI / 2);
  CHECK(q[0] == doctest::Approx(1));
  CHECK(std::abs(q[1]) < 1e-8);
  CHECK(q[2] == doctest::Approx(1));
  CHECK(conformal_distortion(rot, mk, {1, 1, 0}, 0.7).lambda == doctest::Approx(1));
}

TEST_CASE("flows compose and reverse") {
  auto f = hopf_flow();
  Point x{1.3, 0.2, -0.4};
  auto a = integrate(FlowSpec::linear(hyperbolic_generator()), integrate(FlowSpec::linear(hyperbolic_generator()), x, 0.4), 0.9);
  auto b = integrate(FlowSpec::linear(hyperbolic_generator()), x, 1.3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(a[i] == doctest::Approx(b[i]));
  auto back = integrate(f.reversed(), integrate(FlowSpec::linear(hyperbolic_generator()), x, 0.6), 0.6);
  for (std::size_t i = 0; i < 3; ++i) CHECK(back[i] == doctest::Approx(x[i]));
}

TEST_CASE("escape detection") {
  auto e1 = parse_expr("x^2", {"x", "y", "z"});
  auto blowup = FlowSpec::chart({e1, Expr::num(0), Expr::num(0)});
  try {
    integrate(blowup, {1, 0, 0}, 2);
    FAIL("expected an escape");
  } catch (const EscapeError& e) {
    CHECK(e.kind() == ErrorKind::TrajectoryEscape);
    // reported at the end of the integration step that left the domain
    CHECK(e.exit_time() >= 1.0);
    CHECK(e.exit_time() < 1.1);
  }
  auto inv = parse_expr("1/x", {"x", "y", "z"});
  auto singular = FlowSpec::chart({Expr::num(-1), inv, Expr::num(0)});
  CHECK_THROWS_AS(integrate(singular, {0.5, 0, 0}, 1), EscapeError);
}

TEST_CASE("deck normalizer keeps points in the fundamental annulus") {
  DeckNormalizer d{2};
  Point x{10, 0, 0};
  double factor = d.normalize(x);
  CHECK(factor == doctest::Approx(0.125));
  CHECK(x[0] == doctest::Approx(1.25));
  Point y{0.1, 0, 0};
  CHECK(d.normalize(y) == doctest::Approx(16));
  Point z{1.5, 0, 0};
  CHECK(d.normalize(z) == 1);
}

TEST_CASE("Lyapunov spectrum of the Hopf hyperbolic flow") {
  auto L = lyapunov_spectrum(hopf_flow(), {1.5, 0, 0}, 50 * kLn2, kLn2 / 50);
  REQUIRE(L.exponents.size() == 3);
  CHECK(std::abs(L.exponents[0] - 0) < 1e-2);
  CHECK(std::abs(L.exponents[1] + 1) < 1e-2);
  CHECK(std::abs(L.exponents[2] + 2) < 1e-2);
  CHECK(std::count_if(L.exponents.begin(), L.exponents.end(), [](double e) { return std::abs(e) < 1e-2; }) == 1);
  CHECK(L.distinct.size() == 3);
  CHECK(L.multiplicities == std::vector<int>{1, 1, 1});
  CHECK(L.converged);
  CHECK(std::abs(L.flow_direction_exponent) < 1e-2);
}

TEST_CASE("Lyapunov spectrum sums to the deck-corrected trace") {
  // Liouville: the sum is tr(A) minus dim * log(lambda) per unit time spent
  // crossing fundamental domains (one crossing per log 2 here).
  auto L = lyapunov_spectrum(hopf_flow(), {1.5, 0, 0}, 50 * kLn2, kLn2 / 50);
  double sum = std::accumulate(L.exponents.begin(), L.exponents.end(), 0.0);
  CHECK(sum == doctest::Approx(-3).epsilon(1e-6));
  auto R = lyapunov_spectrum(hopf_flow().reversed(), {1.5, 0, 0}, 50 * kLn2, kLn2 / 50);
  CHECK(std::abs(R.exponents[0] - 2) < 1e-2);
  CHECK(std::abs(R.exponents[1] - 1) < 1e-2);
  CHECK(std::abs(R.exponents[2]) < 1e-2);
}

TEST_CASE("Lyapunov spectrum of an unnormalized linear flow is its eigenvalues") {
  ExactMatrix a{{Rational(1, 2), 1, 0}, {0, Rational(-1, 4), 0}, {0, 0, -1}};
  auto L = lyapunov_spectrum(FlowSpec::linear(a), {0.2, 0.3, 0.4}, 40, 0.1);
  CHECK(std::abs(L.exponents[0] - 0.5) < 1e-2);
  CHECK(std::abs(L.exponents[1] + 0.25) < 1e-2);
  CHECK(std::abs(L.exponents[2] + 1) < 1e-2);
  CHECK(L.multiplicities == std::vector<int>{1, 1, 1});
}

TEST_CASE("conformal distortion of the renormalized flow is e^{2t}") {
  auto g = HopfModel::renormalized_metric();
  auto flow = FlowSpec::linear(hyperbolic_generator(), FieldConvention::Paper);
  for (Point x : {Point{0.7, 0.2, 0.3}, Point{1.5, -0.4, 0.1}, Point{-2.0, 1.0, 0.5}})
    for (double t : {-0.8, 0.1, 0.4, 1.3}) {
      auto s = conformal_distortion(flow, g, x, t);
      CHECK(std::abs(s.lambda - std::exp(2 * t)) <= 1e-6 * std::exp(2 * t));
      CHECK(s.residual < 1e-9);
    }
}

TEST_CASE("distortion cocycle identity") {
  auto g = HopfModel::renormalized_metric();
  auto flow = FlowSpec::linear(ExactMatrix{{1, 1, 0}, {0, 0, -1}, {0, 0, -1}}, FieldConvention::Paper);
  Point x{0.9, 0.3, -0.2};
  const double s = 0.35, t = 0.5;
  auto a = conformal_distortion(flow, g, x, s + t).lambda;
  auto b = conformal_distortion(flow, g, x, s).lambda * conformal_distortion(flow, g, integrate(flow, x, s), t).lambda;
  CHECK(a == doctest::Approx(b).epsilon(1e-9));
}

TEST_CASE("homothety distortion on the flat chart") {
  Eigen::MatrixXd d = 2 * Eigen::MatrixXd::Identity(3, 3);
  CHECK(map_distortion(HopfModel::metric(), {1, 2, 3}, {2, 4, 6}, d).lambda == doctest::Approx(4));
}

TEST_CASE("non-conformal flows raise") {
  auto flow = FlowSpec::linear(ExactMatrix{{1, 0, 0}, {0, 2, 0}, {0, 0, 3}});
  CHECK_THROWS_AS(conformal_distortion(flow, builtin_metric("minkowski3"), {1, 1, 1}, 0.5), Error);
  try {
    conformal_distortion(flow, builtin_metric("minkowski3"), {1, 1, 1}, 0.5);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Conformality);
  }
}

TEST_CASE("periodic orbit of the Hopf flow") {
  auto f = hopf_flow();
  auto po = find_periodic(f, {1.5, 0, 0}, default_transversal(f, {1.5, 0, 0}));
  CHECK(std::abs(po.period - kLn2) < 1e-8);
  CHECK(po.closure_residual < 1e-10);
  CHECK(po.flow_direction_residual < 1e-8);
  CHECK(on_nullcone(po.point, 1e-10));
  // Off-cone seeds are attracted to the light-like orbit.
  auto po2 = find_periodic(f, {1.5, 1e-3, 1e-3}, default_transversal(f, {1.5, 0, 0}));
  CHECK(std::abs(po2.period - kLn2) < 1e-8);
  CHECK(std::abs(po2.point[1]) < 1e-9);
  CHECK(std::abs(po2.point[2]) < 1e-9);
}

TEST_CASE("first return time") {
  auto f = hopf_flow();
  auto tr = default_transversal(f, {1.5, 0, 0});
  auto hit = first_return(f, {1.5, 0, 0}, tr);
  CHECK(hit.time == doctest::Approx(kLn2).epsilon(1e-10));
  CHECK(hit.point[0] == doctest::Approx(1.5));
}

TEST_CASE("orbits that never return raise NoReturn") {
  auto f = hopf_flow();
  try {
    find_periodic(f, {-1, 0, 1}, default_transversal(f, {-1, 0, 1}));
    FAIL("expected NoReturn");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoReturn);
  }
}
