#include <doctest.h>

#include <conflab/errors.hpp>
#include <conflab/liealg.hpp>
#include <conflab/sampling.hpp>

using namespace conflab;

namespace {

Rational trace(const ExactMatrix& m) {
  Rational t = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

std::size_t count_label(const std::vector<BasisElement>& b, RootLabel l) {
  return static_cast<std::size_t>(std::count_if(b.begin(), b.end(), [&](const BasisElement& e) { return e.label == l; }));
}

}  // namespace

TEST_CASE("bracket of the rational sl2 triple") {
  auto t = standard_sl2_triple();
  CHECK(bracket(t.X, t.Y) == t.Y);
  CHECK(bracket(t.X, t.Z) == -t.Z);
  CHECK(bracket(t.Y, t.Z) == t.X);
  CHECK(verify_sl2_triple(t).ok);
}

TEST_CASE("bracket rejects mismatched sizes") {
  ExactMatrix a = ExactMatrix::identity(2), b = ExactMatrix::identity(3);
  CHECK_THROWS_AS(bracket(a, b), Error);
  try {
    bracket(a, b);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Dimension);
  }
}

TEST_CASE("bracket is antisymmetric on random rational matrices") {
  Sampler s(11);
  for (int i = 0; i < 20; ++i) {
    auto a = s.rational_matrix(4, 4), b = s.rational_matrix(4, 4);
    CHECK(bracket(a, b) == -bracket(b, a));
  }
}

TEST_CASE("Cartan element acts on g_beta by b") {
  const int n = 5;
  CartanElement h{Rational(3), Rational(-2, 7)};
  for (const auto& e : so2n_basis(n))
    if (e.label == RootLabel::Beta) CHECK(bracket(h.matrix(n), e.matrix) == e.matrix * h.b);
}

TEST_CASE("root values alpha(a,b) = a - b") {
  CartanElement h{Rational(5), Rational(2)};
  CHECK(root_value(RootLabel::Alpha, h) == 3);
  CHECK(root_value(RootLabel::Beta, h) == 2);
  CHECK(root_value(RootLabel::AlphaPlusBeta, h) == 5);
  CHECK(root_value(RootLabel::AlphaPlus2Beta, h) == 7);
  CHECK(root_value(RootLabel::NegAlpha, h) == -3);
}

TEST_CASE("so2n basis sizes and root space dimensions") {
  CHECK(so2n_basis(4).size() == 15);
  auto b5 = so2n_basis(5);
  CHECK(count_label(b5, RootLabel::Beta) == 3);
  CHECK(count_label(so2n_basis(3), RootLabel::Alpha) == 1);
  for (int n = 3; n <= 8; ++n) {
    auto b = so2n_basis(n);
    const auto un = static_cast<std::size_t>(n);
    CHECK(b.size() == so2n_dimension(n));
    CHECK(b.size() == (un + 2) * (un + 1) / 2);
    CHECK(count_label(b, RootLabel::A) == 2);
    CHECK(count_label(b, RootLabel::M) == (un - 2) * (un - 3) / 2);
    for (auto l : {RootLabel::Alpha, RootLabel::AlphaPlus2Beta, RootLabel::NegAlpha, RootLabel::NegAlphaPlus2Beta})
      CHECK(count_label(b, l) == 1);
    for (auto l : {RootLabel::Beta, RootLabel::AlphaPlusBeta, RootLabel::NegBeta, RootLabel::NegAlphaPlusBeta})
      CHECK(count_label(b, l) == un - 2);
  }
}

TEST_CASE("so2n basis rejects n < 3") {
  CHECK_THROWS_AS(so2n_basis(2), Error);
  CHECK_THROWS_AS(So2nForm::make(2), Error);
}

TEST_CASE("basis elements are members and lie in their root space") {
  for (int n = 3; n <= 6; ++n) {
    auto form = So2nForm::make(n);
    CartanElement h{Rational(2), Rational(1, 3)};
    for (const auto& e : so2n_basis(n)) {
      CHECK(is_member(e.matrix, form));
      if (e.label == RootLabel::A || e.label == RootLabel::M) {
        CHECK(bracket(h.matrix(n), e.matrix).is_zero());
      } else {
        CHECK(bracket(h.matrix(n), e.matrix) == e.matrix * root_value(e.label, h));
      }
    }
  }
}

TEST_CASE("membership of non-members") {
  auto form = So2nForm::make(4);
  CHECK_FALSE(is_member(ExactMatrix::identity(6), form));
  CHECK(is_member(ExactMatrix(6, 6), form));
}

TEST_CASE("form matrix is a symmetric involution of Witt index 2") {
  for (int n = 3; n <= 7; ++n) {
    auto f = So2nForm::make(n);
    CHECK(f.S == f.S.transpose());
    CHECK(f.S * f.S == ExactMatrix::identity(f.size()));
    // x = e1 + e2 spans, with e1 and e2, a totally isotropic plane
    auto e1 = unit_vector<Rational>(f.size(), 0), e2 = unit_vector<Rational>(f.size(), 1);
    CHECK(f.eval(e1, e1) == 0);
    CHECK(f.eval(e2, e2) == 0);
    CHECK(f.eval(e1, e2) == 0);
  }
}

TEST_CASE("Cartan involution") {
  auto form = So2nForm::make(5);
  for (const auto& e : so2n_basis(5)) {
    auto t = cartan_involution(e.matrix);
    CHECK(is_member(t, form));
    CHECK(cartan_involution(t) == e.matrix);
  }
  // theta maps g_lambda to g_{-lambda}
  for (const auto& e : so2n_basis(4)) {
    if (e.label == RootLabel::Alpha) {
      auto d = root_decompose(cartan_involution(e.matrix), 4);
      REQUIRE(d.support().size() == 1);
      CHECK(d.support().front() == RootLabel::NegAlpha);
    }
  }
}

TEST_CASE("Killing form equals n times the trace form") {
  for (int n = 3; n <= 5; ++n) {
    auto basis = so2n_basis(n);
    std::vector<ExactMatrix> mats;
    for (const auto& e : basis) mats.push_back(e.matrix);
    CoordinateMap coords(mats);
    Sampler s(static_cast<std::uint64_t>(n));
    for (int i = 0; i < 4; ++i) {
      auto a = s.so2n_member(n), b = s.so2n_member(n);
      CHECK(killing_form(coords, a, b) == Rational(n) * trace(a * b));
      CHECK(killing_form(coords, a, b) == killing_form(coords, b, a));
    }
  }
}

TEST_CASE("Killing form is negative definite on the compact part") {
  const int n = 5;
  auto basis = so2n_basis(n);
  std::vector<ExactMatrix> mats;
  for (const auto& e : basis) mats.push_back(e.matrix);
  CoordinateMap coords(mats);
  for (const auto& e : basis) {
    auto k = e.matrix + cartan_involution(e.matrix);
    if (!k.is_zero()) CHECK(killing_form(coords, k, k) < 0);
  }
}

TEST_CASE("coordinate map round trip and span test") {
  auto basis = so2n_basis(4);
  std::vector<ExactMatrix> mats;
  for (const auto& e : basis) mats.push_back(e.matrix);
  CoordinateMap coords(mats);
  Sampler s(5);
  auto m = s.so2n_member(4);
  auto c = coords.coordinates(m);
  REQUIRE(c.has_value());
  CHECK(coords.combine(*c) == m);
  CHECK_FALSE(coords.coordinates(ExactMatrix::identity(6)).has_value());
}

TEST_CASE("adjoint matrix is a representation") {
  auto basis = so2n_basis(3);
  std::vector<ExactMatrix> mats;
  for (const auto& e : basis) mats.push_back(e.matrix);
  CoordinateMap coords(mats);
  Sampler s(9);
  auto a = s.so2n_member(3), b = s.so2n_member(3);
  auto lhs = adjoint_matrix(coords, bracket(a, b));
  auto ra = adjoint_matrix(coords, a), rb = adjoint_matrix(coords, b);
  CHECK(lhs == ra * rb - rb * ra);
}

TEST_CASE("root decomposition sums to the total") {
  Sampler s(21);
  for (int n = 3; n <= 6; ++n) {
    auto m = s.so2n_member(n);
    auto d = root_decompose(m, n);
    ExactMatrix sum(m.rows(), m.cols());
    for (const auto& [label, c] : d.components) sum += c;
    CHECK(sum == m);
    CHECK(d.total == m);
  }
}

TEST_CASE("root decomposition rejects non-members") {
  CHECK_THROWS_AS(root_decompose(ExactMatrix::identity(5), 3), Error);
}

TEST_CASE("grading degrees") {
  CHECK(grading_degree(RootLabel::Alpha) == 1);
  CHECK(grading_degree(RootLabel::AlphaPlusBeta) == 1);
  CHECK(grading_degree(RootLabel::AlphaPlus2Beta) == 1);
  CHECK(grading_degree(RootLabel::Beta) == 0);
  CHECK(grading_degree(RootLabel::NegBeta) == 0);
  CHECK(grading_degree(RootLabel::A) == 0);
  CHECK(grading_degree(RootLabel::NegAlpha) == -1);
}

TEST_CASE("bracket table respects root weights exhaustively for n = 4") {
  const int n = 4;
  auto basis = so2n_basis(n);
  for (const auto& a : basis)
    for (const auto& b : basis) {
      auto c = bracket(a.matrix, b.matrix);
      if (c.is_zero()) continue;
      auto wa = weight_of(a.label), wb = weight_of(b.label);
      RootWeight sum{wa.alpha + wb.alpha, wa.beta + wb.beta};
      auto allowed = labels_with_weight(sum);
      REQUIRE_FALSE(allowed.empty());
      auto d = root_decompose(c, n);
      for (auto l : d.support()) CHECK(std::find(allowed.begin(), allowed.end(), l) != allowed.end());
    }
}

TEST_CASE("sl2 triple check reports residuals") {
  auto t = standard_sl2_triple();
  auto bad = verify_sl2_triple(t.X, t.Z, t.Y);
  CHECK_FALSE(bad.ok);
  CHECK_FALSE(bad.residual_xy.is_zero());
}
