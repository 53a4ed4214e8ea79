#include "conflab/liealg.hpp"

#include <algorithm>

namespace conflab {

ExactMatrix bracket(const ExactMatrix& a, const ExactMatrix& b) {
  if (!a.is_square() || a.rows() != b.rows() || b.cols() != a.cols())
    throw Error(ErrorKind::Dimension, "bracket of matrices with different sizes");
  return a * b - b * a;
}

So2nForm So2nForm::make(int n) {
  if (n < 3) throw Error(ErrorKind::Domain, "so(2,n) requires n >= 3, got " + std::to_string(n));
  So2nForm f;
  f.n = n;
  const std::size_t N = static_cast<std::size_t>(n + 2);
  f.S = ExactMatrix(N, N);
  for (std::size_t i = 0; i < N; ++i) f.S(i, f.partner(i)) = 1;
  return f;
}

std::size_t So2nForm::partner(std::size_t i) const {
  const std::size_t N = size();
  if (i < 2 || i + 2 >= N) return N - 1 - i;
  return i;
}

const std::vector<RootLabel>& all_root_labels() {
  static const std::vector<RootLabel> labels = {
      RootLabel::A,        RootLabel::M,       RootLabel::Alpha,          RootLabel::Beta,
      RootLabel::AlphaPlusBeta, RootLabel::AlphaPlus2Beta, RootLabel::NegAlpha, RootLabel::NegBeta,
      RootLabel::NegAlphaPlusBeta, RootLabel::NegAlphaPlus2Beta};
  return labels;
}

std::string to_string(RootLabel label) {
  switch (label) {
    case RootLabel::A: return "a";
    case RootLabel::M: return "m";
    case RootLabel::Alpha: return "alpha";
    case RootLabel::Beta: return "beta";
    case RootLabel::AlphaPlusBeta: return "alpha+beta";
    case RootLabel::AlphaPlus2Beta: return "alpha+2beta";
    case RootLabel::NegAlpha: return "-alpha";
    case RootLabel::NegBeta: return "-beta";
    case RootLabel::NegAlphaPlusBeta: return "-(alpha+beta)";
    case RootLabel::NegAlphaPlus2Beta: return "-(alpha+2beta)";
  }
  return "?";
}

RootWeight weight_of(RootLabel label) {
  switch (label) {
    case RootLabel::A:
    case RootLabel::M: return {0, 0};
    case RootLabel::Alpha: return {1, 0};
    case RootLabel::Beta: return {0, 1};
    case RootLabel::AlphaPlusBeta: return {1, 1};
    case RootLabel::AlphaPlus2Beta: return {1, 2};
    case RootLabel::NegAlpha: return {-1, 0};
    case RootLabel::NegBeta: return {0, -1};
    case RootLabel::NegAlphaPlusBeta: return {-1, -1};
    case RootLabel::NegAlphaPlus2Beta: return {-1, -2};
  }
  return {};
}

std::vector<RootLabel> labels_with_weight(RootWeight w) {
  std::vector<RootLabel> out;
  for (auto l : all_root_labels())
    if (weight_of(l) == w) out.push_back(l);
  return out;
}

int grading_degree(RootLabel label) { return weight_of(label).alpha; }

std::size_t so2n_dimension(int n) {
  return static_cast<std::size_t>((n + 2) * (n + 1) / 2);
}

std::vector<BasisElement> so2n_basis(int n) {
  So2nForm form = So2nForm::make(n);
  const std::size_t N = form.size();
  const std::size_t last = N - 1, second_last = N - 2;

  // E_ij - E_{s(j) s(i)}, the generic member with a 1 at (i, j).
  auto element = [&](std::size_t i, std::size_t j) {
    ExactMatrix m = ExactMatrix::unit(N, i, j);
    m(form.partner(j), form.partner(i)) -= 1;
    return m;
  };

  std::vector<BasisElement> positives;
  auto push = [&](RootLabel l, std::size_t i, std::size_t j) { positives.push_back({l, element(i, j), i, j}); };

  std::vector<BasisElement> basis;
  basis.push_back({RootLabel::A, element(0, 0), 0, 0});
  basis.push_back({RootLabel::A, element(1, 1), 1, 1});
  for (std::size_t i = 2; i < second_last; ++i)
    for (std::size_t j = i + 1; j < second_last; ++j) basis.push_back({RootLabel::M, element(i, j), i, j});

  push(RootLabel::Alpha, 0, 1);
  for (std::size_t m = 2; m < second_last; ++m) push(RootLabel::Beta, 1, m);
  for (std::size_t m = 2; m < second_last; ++m) push(RootLabel::AlphaPlusBeta, 0, m);
  push(RootLabel::AlphaPlus2Beta, 0, second_last);
  (void)last;

  auto negate = [](RootLabel l) {
    switch (l) {
      case RootLabel::Alpha: return RootLabel::NegAlpha;
      case RootLabel::Beta: return RootLabel::NegBeta;
      case RootLabel::AlphaPlusBeta: return RootLabel::NegAlphaPlusBeta;
      case RootLabel::AlphaPlus2Beta: return RootLabel::NegAlphaPlus2Beta;
      default: return l;
    }
  };

  for (const auto& p : positives) basis.push_back(p);
  for (const auto& p : positives) basis.push_back({negate(p.label), p.matrix.transpose(), p.col, p.row});
  return basis;
}

bool is_member(const ExactMatrix& m, const So2nForm& form) {
  if (m.rows() != form.size() || m.cols() != form.size())
    throw Error(ErrorKind::Dimension, "membership test: expected size " + std::to_string(form.size()));
  return (m.transpose() * form.S + form.S * m).is_zero();
}

ExactMatrix cartan_involution(const ExactMatrix& m) { return -m.transpose(); }

ExactMatrix CartanElement::matrix(int n) const {
  const std::size_t N = static_cast<std::size_t>(n + 2);
  ExactMatrix h(N, N);
  h(0, 0) = a;
  h(1, 1) = b;
  h(N - 2, N - 2) = -b;
  h(N - 1, N - 1) = -a;
  return h;
}

Rational root_value(RootLabel label, const CartanElement& h) {
  RootWeight w = weight_of(label);
  return Rational(w.alpha) * (h.a - h.b) + Rational(w.beta) * h.b;
}

CoordinateMap::CoordinateMap(std::vector<ExactMatrix> basis) : basis_(std::move(basis)) {
  if (basis_.empty()) return;
  const std::size_t entries = basis_.front().rows() * basis_.front().cols();
  // Rows of `stack` are the vectorized basis elements; its pivot columns are
  // entry positions on which the basis is already independent.
  ExactMatrix stack(basis_.size(), entries);
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    if (basis_[k].data().size() != entries) throw Error(ErrorKind::Dimension, "coordinate basis of mixed sizes");
    for (std::size_t e = 0; e < entries; ++e) stack(k, e) = basis_[k].data()[e];
  }
  pivot_entries_ = rref(stack).pivots;
  if (pivot_entries_.size() != basis_.size())
    throw Error(ErrorKind::Representation, "coordinate basis is linearly dependent");
  ExactMatrix restricted(basis_.size(), basis_.size());
  for (std::size_t e = 0; e < pivot_entries_.size(); ++e)
    for (std::size_t k = 0; k < basis_.size(); ++k) restricted(e, k) = basis_[k].data()[pivot_entries_[e]];
  pivot_inverse_ = inverse(restricted);
}

std::optional<Vec<Rational>> CoordinateMap::coordinates(const ExactMatrix& m) const {
  if (basis_.empty()) return m.is_zero() ? std::optional<Vec<Rational>>(Vec<Rational>{}) : std::nullopt;
  if (m.data().size() != basis_.front().data().size()) throw Error(ErrorKind::Dimension, "coordinates: size mismatch");
  Vec<Rational> rhs(pivot_entries_.size());
  for (std::size_t e = 0; e < pivot_entries_.size(); ++e) rhs[e] = m.data()[pivot_entries_[e]];
  Vec<Rational> c = pivot_inverse_.apply(rhs);
  if (combine(c) != m) return std::nullopt;
  return c;
}

ExactMatrix CoordinateMap::combine(const Vec<Rational>& coords) const {
  ExactMatrix m(basis_.front().rows(), basis_.front().cols());
  for (std::size_t k = 0; k < coords.size(); ++k)
    if (sgn(coords[k]) != 0) m += basis_[k] * coords[k];
  return m;
}

ExactMatrix adjoint_matrix(const CoordinateMap& coords, const ExactMatrix& a) {
  const std::size_t d = coords.dimension();
  ExactMatrix ad(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    auto c = coords.coordinates(bracket(a, coords.basis()[j]));
    if (!c) throw Error(ErrorKind::Representation, "span is not closed under ad of the given element");
    ad.set_col(j, *c);
  }
  return ad;
}

Rational killing_form(const CoordinateMap& coords, const ExactMatrix& a, const ExactMatrix& b) {
  if (!coords.coordinates(a) || !coords.coordinates(b))
    throw Error(ErrorKind::Representation, "killing_form argument outside the span of the basis");
  Rational tr = 0;
  for (std::size_t j = 0; j < coords.dimension(); ++j) {
    auto c = coords.coordinates(bracket(a, bracket(b, coords.basis()[j])));
    if (!c) throw Error(ErrorKind::Representation, "basis span is not a subalgebra");
    tr += (*c)[j];
  }
  return tr;
}

Rational killing_form(const std::vector<ExactMatrix>& basis, const ExactMatrix& a, const ExactMatrix& b) {
  return killing_form(CoordinateMap(basis), a, b);
}

ExactMatrix GradedElement::component(RootLabel label) const {
  auto it = components.find(label);
  if (it != components.end()) return it->second;
  return ExactMatrix(total.rows(), total.cols());
}

std::vector<RootLabel> GradedElement::support() const {
  std::vector<RootLabel> s;
  for (auto l : all_root_labels()) {
    auto it = components.find(l);
    if (it != components.end() && !it->second.is_zero()) s.push_back(l);
  }
  return s;
}

GradedElement root_decompose(const ExactMatrix& m, int n) {
  So2nForm form = So2nForm::make(n);
  if (!is_member(m, form)) throw Error(ErrorKind::Membership, "root_decompose: matrix is not in so(2,n)");
  GradedElement g{form, m, {}};
  for (const auto& e : so2n_basis(n)) {
    const Rational& c = m(e.row, e.col);
    if (sgn(c) == 0) continue;
    auto [it, inserted] = g.components.try_emplace(e.label, ExactMatrix(m.rows(), m.cols()));
    it->second += e.matrix * c;
  }
  ExactMatrix sum(m.rows(), m.cols());
  for (const auto& [l, c] : g.components) sum += c;
  if (sum != m) throw Error(ErrorKind::Membership, "root_decompose: components do not reproduce the input");
  return g;
}

TripleCheck verify_sl2_triple(const ExactMatrix& x, const ExactMatrix& y, const ExactMatrix& z) {
  TripleCheck t;
  t.residual_xy = bracket(x, y) - y;
  t.residual_xz = bracket(x, z) + z;
  t.residual_yz = bracket(y, z) - x;
  t.ok = t.residual_xy.is_zero() && t.residual_xz.is_zero() && t.residual_yz.is_zero();
  return t;
}

Sl2Triple standard_sl2_triple() {
  Rational half(1, 2);
  return {ExactMatrix{{half, 0}, {0, -half}}, ExactMatrix{{0, 1}, {0, 0}}, ExactMatrix{{0, 0}, {half, 0}}};
}

}  // namespace conflab
