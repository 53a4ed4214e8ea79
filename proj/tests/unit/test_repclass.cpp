#include <doctest.h>

#include <algorithm>

#include <conflab/errors.hpp>
#include <conflab/repclass.hpp>
#include <conflab/sampling.hpp>

using namespace conflab;

namespace {

std::vector<Rational> sorted(Vec<Rational> v) {
  std::sort(v.begin(), v.end());
  return v;
}

Vec<Rational> padded(std::initializer_list<int> head_num, std::initializer_list<int> head_den, int zeros,
                     std::initializer_list<int> tail_num, std::initializer_list<int> tail_den) {
  Vec<Rational> out;
  auto hd = head_den.begin();
  for (int x : head_num) out.emplace_back(x, *hd++);
  for (int i = 0; i < zeros; ++i) out.emplace_back(0);
  auto td = tail_den.begin();
  for (int x : tail_num) out.emplace_back(x, *td++);
  return out;
}

}  // namespace

TEST_CASE("irreducible representation is a homomorphism") {
  for (int d = 1; d <= 6; ++d) {
    auto r = irreducible_rep(d);
    CHECK(r.dim() == static_cast<std::size_t>(d + 1));
    CHECK(r.residuals().ok);
  }
}

TEST_CASE("irreducible_rep rejects d < 1") { CHECK_THROWS_AS(irreducible_rep(0), Error); }

TEST_CASE("make_representation rejects non-triples") {
  auto t = standard_sl2_triple();
  CHECK_THROWS_AS(make_representation(t.X, t.Z, t.Y), Error);
  try {
    make_representation(t.X, t.Z, t.Y);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Representation);
  }
}

TEST_CASE("invariant symmetric forms of irreducibles") {
  // Dimension 2: no invariant symmetric form.
  CHECK(invariant_symmetric_forms(irreducible_rep(1)).basis.empty());
  // Dimension 3: a line of forms of signature (1, 2) up to sign.
  auto f3 = invariant_symmetric_forms(irreducible_rep(2));
  REQUIRE(f3.basis.size() == 1);
  auto s = signature(f3.basis[0]);
  CHECK(s.null == 0);
  CHECK(std::min(s.pos, s.neg) == 1);
  CHECK(std::max(s.pos, s.neg) == 2);
}

TEST_CASE("invariant forms really are invariant") {
  for (int d = 1; d <= 6; ++d) {
    auto r = irreducible_rep(d);
    for (const auto& q : invariant_symmetric_forms(r).basis) {
      CHECK(q == q.transpose());
      for (const auto* m : {&r.images.X, &r.images.Y, &r.images.Z}) CHECK((m->transpose() * q + q * *m).is_zero());
    }
  }
}

TEST_CASE("Sylvester inertia") {
  CHECK(signature(ExactMatrix{{0, 1}, {1, 0}}) == Inertia{1, 1, 0});
  CHECK(signature(ExactMatrix{{1, 2}, {2, 4}}) == Inertia{1, 0, 1});
  CHECK(signature(So2nForm::make(5).S) == Inertia{5, 2, 0});
  CHECK(signature(ExactMatrix{{-2, 0, 0}, {0, Rational(1, 3), 0}, {0, 0, 0}}) == Inertia{1, 1, 1});
}

TEST_CASE("highest weight data of the 5-dimensional irreducible") {
  auto h = highest_weight_data(irreducible_rep(4));
  CHECK(h.weight == 2);
  CHECK(h.cyclic.cols() == 5);
  CHECK(h.vector.front() == 1);
}

TEST_CASE("invariant subspace test") {
  auto r = irreducible_rep(3);
  CHECK(is_invariant_subspace(r, ExactMatrix::identity(4)));
  CHECK_FALSE(is_invariant_subspace(r, ExactMatrix::column(unit_vector<Rational>(4, 0))));
}

TEST_CASE("case labels parse in both spellings") {
  CHECK(parse_case_label("2a") == CaseLabel::Lorentz3_TrivialComplement);
  CHECK(parse_case_label("2b") == CaseLabel::Lorentz3_SecondBlock);
  CHECK(parse_case_label("4") == CaseLabel::Signature23);
  for (auto l : all_case_labels()) CHECK(parse_case_label(to_string(l)) == l);
  CHECK_THROWS_AS(parse_case_label("5"), Error);
}

TEST_CASE("round trip build then classify") {
  for (int n = 3; n <= 6; ++n)
    for (auto l : all_case_labels()) {
      if (l == CaseLabel::Lorentz3_SecondBlock && n < 4) {
        CHECK_THROWS_AS(build_case(l, n), Error);
        continue;
      }
      auto c = classify_embedding(build_case(l, n), So2nForm::make(n));
      CHECK(c.label == l);
      CHECK(c.exact());
      CHECK(c.gram_residual == 0);
      CHECK(c.normal_form_residual == 0);
    }
}

TEST_CASE("normal form eigenvalues of rho(X) in each case") {
  const int n = 5;
  auto nf = [&](CaseLabel l) { return sorted(classify_embedding(build_case(l, n), So2nForm::make(n)).normal_form); };
  CHECK(nf(CaseLabel::IsotropicPlane) == sorted(padded({1, -1}, {2, 2}, n - 2, {1, -1}, {2, 2})));
  CHECK(nf(CaseLabel::Lorentz3_TrivialComplement) == sorted(padded({1}, {1}, n, {-1}, {1})));
  CHECK(nf(CaseLabel::Lorentz3_SecondBlock) == sorted(padded({1, 1}, {1, 1}, n - 2, {-1, -1}, {1, 1})));
  CHECK(nf(CaseLabel::Signature21) == sorted(padded({1}, {1}, n, {-1}, {1})));
  CHECK(nf(CaseLabel::Signature23) == sorted(padded({2, 1}, {1, 1}, n - 2, {-1, -2}, {1, 1})));
}

TEST_CASE("nilpotency of rho(Y) on the cyclic subspace") {
  // Frozen from the constructed normal forms; equals the cyclic dimension.
  const int n = 4;
  auto cls = [&](CaseLabel l) { return classify_embedding(build_case(l, n), So2nForm::make(n)); };
  CHECK(cls(CaseLabel::IsotropicPlane).nilpotency_on_cyclic == 2);
  CHECK(cls(CaseLabel::Lorentz3_TrivialComplement).nilpotency_on_cyclic == 3);
  CHECK(cls(CaseLabel::Lorentz3_SecondBlock).nilpotency_on_cyclic == 3);
  CHECK(cls(CaseLabel::Signature21).nilpotency_on_cyclic == 3);
  CHECK(cls(CaseLabel::Signature23).nilpotency_on_cyclic == 5);
  for (auto l : all_case_labels()) {
    auto c = cls(l);
    CHECK(c.nilpotency_on_cyclic == c.cyclic_dim);
  }
}

TEST_CASE("cyclic signatures distinguish cases 2 and 3") {
  const int n = 4;
  auto c2 = classify_embedding(build_case(CaseLabel::Lorentz3_TrivialComplement, n), So2nForm::make(n));
  auto c3 = classify_embedding(build_case(CaseLabel::Signature21, n), So2nForm::make(n));
  CHECK(c2.cyclic_signature == Inertia{2, 1, 0});
  CHECK(c3.cyclic_signature == Inertia{1, 2, 0});
}

TEST_CASE("classification survives conjugation in O(2,n)") {
  Sampler s(404);
  for (int n = 4; n <= 5; ++n)
    for (auto l : all_case_labels()) {
      auto r = build_case(l, n);
      auto g = s.orthogonal_element(n, 3);
      auto gi = inverse(g);
      auto rc = make_representation(g * r.images.X * gi, g * r.images.Y * gi, g * r.images.Z * gi);
      auto c = classify_embedding(rc, So2nForm::make(n));
      CHECK(c.label == l);
      CHECK(c.gram_residual < 1e-9);
      CHECK(c.normal_form_residual < 1e-9);
    }
}

TEST_CASE("anti-homomorphic triple is classified through its negative") {
  auto r = build_case(CaseLabel::Signature21, 4);
  Representation anti{{-r.images.X, -r.images.Y, -r.images.Z}};
  CHECK_FALSE(anti.residuals().ok);
  auto c = classify_embedding(anti, So2nForm::make(4));
  CHECK(c.sign == TripleSign::Negated);
  CHECK(c.label == CaseLabel::Signature21);
  auto d = classify_embedding(make_representation(r.images.X, -r.images.Y, -r.images.Z), So2nForm::make(4));
  CHECK(d.sign == TripleSign::Direct);
  CHECK(d.label == CaseLabel::Signature21);
}

TEST_CASE("classification rejects a triple outside so(2,n)") {
  auto r = irreducible_rep(5);
  CHECK_THROWS_AS(classify_embedding(r, So2nForm::make(4)), Error);
}
