#include "conflab/repclass.hpp"

#include <algorithm>
#include <cmath>

#include "conflab/polynomial.hpp"

namespace conflab {

Representation make_representation(ExactMatrix x, ExactMatrix y, ExactMatrix z) {
  if (!x.is_square() || y.rows() != x.rows() || z.rows() != x.rows() || !y.is_square() || !z.is_square())
    throw Error(ErrorKind::Dimension, "representation images must be square of equal size");
  Representation rep{{std::move(x), std::move(y), std::move(z)}};
  if (!rep.residuals().ok) throw Error(ErrorKind::Representation, "images violate the sl(2) bracket relations");
  return rep;
}

Representation irreducible_rep(int d) {
  if (d < 1) throw Error(ErrorKind::Domain, "irreducible_rep requires d >= 1, got " + std::to_string(d));
  const std::size_t m = static_cast<std::size_t>(d) + 1;
  ExactMatrix x(m, m), y(m, m), z(m, m);
  for (std::size_t k = 0; k < m; ++k) {
    const long kk = static_cast<long>(k);
    x(k, k) = Rational(d - 2 * kk, 2);
    if (k > 0) y(k - 1, k) = Rational(kk * (d - kk + 1));
    if (k + 1 < m) z(k + 1, k) = Rational(1, 2);
  }
  return make_representation(std::move(x), std::move(y), std::move(z));
}

InvariantFormSpace invariant_symmetric_forms(const Representation& rep) {
  const std::size_t m = rep.dim();
  std::vector<ExactMatrix> sym;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      ExactMatrix e(m, m);
      e(i, j) = 1;
      e(j, i) = 1;
      sym.push_back(std::move(e));
    }
  const std::vector<const ExactMatrix*> gens = {&rep.images.X, &rep.images.Y, &rep.images.Z};
  ExactMatrix system(3 * m * m, sym.size());
  for (std::size_t c = 0; c < sym.size(); ++c) {
    std::size_t r = 0;
    for (const auto* g : gens) {
      ExactMatrix img = g->transpose() * sym[c] + sym[c] * (*g);
      for (const auto& v : img.data()) system(r++, c) = v;
    }
  }
  ExactMatrix ns = nullspace(system);
  InvariantFormSpace out{rep, {}};
  for (std::size_t k = 0; k < ns.cols(); ++k) {
    ExactMatrix q(m, m);
    for (std::size_t c = 0; c < sym.size(); ++c)
      if (sgn(ns(c, k)) != 0) q += sym[c] * ns(c, k);
    out.basis.push_back(std::move(q));
  }
  return out;
}

Inertia signature(const ExactMatrix& q) {
  if (!q.is_square() || q != q.transpose()) throw Error(ErrorKind::Shape, "signature requires a symmetric matrix");
  ExactMatrix a = q;
  const std::size_t n = a.rows();
  auto swap_index = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < n; ++c) std::swap(a(i, c), a(j, c));
    for (std::size_t r = 0; r < n; ++r) std::swap(a(r, i), a(r, j));
  };
  Inertia in;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = n;
    for (std::size_t i = k; i < n && piv == n; ++i)
      if (sgn(a(i, i)) != 0) piv = i;
    if (piv == n) {
      // All remaining diagonal entries vanish: fold an off-diagonal entry
      // onto the diagonal by the congruence e_i -> e_i + e_j.
      std::size_t pi = n, pj = n;
      for (std::size_t i = k; i < n && pi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (sgn(a(i, j)) != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) break;
      for (std::size_t c = 0; c < n; ++c) a(pi, c) += a(pj, c);
      for (std::size_t r = 0; r < n; ++r) a(r, pi) += a(r, pj);
      piv = pi;
    }
    swap_index(piv, k);
    const Rational d = a(k, k);
    if (sgn(d) > 0) ++in.pos;
    else ++in.neg;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (sgn(a(i, k)) == 0) continue;
      Rational f = a(i, k) / d;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      a(i, k) = 0;
      a(k, i) = 0;
    }
  }
  in.null = static_cast<int>(n) - in.pos - in.neg;
  return in;
}

namespace {

Vec<Rational> normalize_first_nonzero(Vec<Rational> v) {
  for (const auto& c : v)
    if (sgn(c) != 0) {
      Rational s = 1 / c;
      for (auto& x : v) x *= s;
      break;
    }
  return v;
}

ExactMatrix shifted(const ExactMatrix& x, const Rational& w) { return x - ExactMatrix::identity(x.rows()) * w; }

}  // namespace

HighestWeightData highest_weight_data(const Representation& rep) {
  const ExactMatrix& x = rep.images.X;
  const ExactMatrix& y = rep.images.Y;
  const ExactMatrix& z = rep.images.Z;
  if (nilpotency_index(y) == 0) throw Error(ErrorKind::Precondition, "rho(Y) is not nilpotent");
  auto weights = rational_roots(characteristic_polynomial(x));
  std::sort(weights.begin(), weights.end(), [](const Rational& a, const Rational& b) { return a > b; });
  ExactMatrix ker_y = nullspace(y);
  for (const auto& w : weights) {
    ExactMatrix common = intersect(ker_y, nullspace(shifted(x, w)));
    if (common.cols() == 0) continue;
    HighestWeightData hw;
    hw.vector = normalize_first_nonzero(common.col(0));
    hw.weight = w;
    std::vector<Vec<Rational>> cols;
    Vec<Rational> cur = hw.vector;
    while (!is_zero_vec(cur) && cols.size() <= rep.dim()) {
      cols.push_back(cur);
      cur = z.apply(cur);
    }
    hw.cyclic = ExactMatrix::from_columns(cols, rep.dim());
    return hw;
  }
  throw Error(ErrorKind::Classification, "no common eigenvector of rho(X) in the kernel of rho(Y)");
}

bool is_invariant_subspace(const Representation& rep, const ExactMatrix& basis) {
  if (basis.cols() == 0) return true;
  const std::size_t r = rank(basis);
  for (const auto* g : {&rep.images.X, &rep.images.Y, &rep.images.Z})
    if (rank(hstack<Rational>({basis, (*g) * basis})) != r) return false;
  return true;
}

const std::vector<CaseLabel>& all_case_labels() {
  static const std::vector<CaseLabel> labels = {CaseLabel::IsotropicPlane, CaseLabel::Lorentz3_TrivialComplement,
                                                CaseLabel::Lorentz3_SecondBlock, CaseLabel::Signature21,
                                                CaseLabel::Signature23};
  return labels;
}

std::string to_string(CaseLabel label) {
  switch (label) {
    case CaseLabel::IsotropicPlane: return "IsotropicPlane";
    case CaseLabel::Lorentz3_TrivialComplement: return "Lorentz3_TrivialComplement";
    case CaseLabel::Lorentz3_SecondBlock: return "Lorentz3_SecondBlock";
    case CaseLabel::Signature21: return "Signature21";
    case CaseLabel::Signature23: return "Signature23";
  }
  return "?";
}

CaseLabel parse_case_label(const std::string& text) {
  static const std::vector<std::pair<std::string, CaseLabel>> shorts = {
      {"1", CaseLabel::IsotropicPlane},      {"2a", CaseLabel::Lorentz3_TrivialComplement},
      {"2b", CaseLabel::Lorentz3_SecondBlock}, {"3", CaseLabel::Signature21},
      {"4", CaseLabel::Signature23}};
  for (const auto& [s, l] : shorts)
    if (text == s) return l;
  for (auto l : all_case_labels())
    if (text == to_string(l)) return l;
  throw Error(ErrorKind::Domain, "unknown case label '" + text + "'");
}

std::string to_string(TripleSign sign) { return sign == TripleSign::Direct ? "direct" : "negated"; }

Vec<Rational> expected_normal_form(CaseLabel label, int n) {
  const std::size_t N = static_cast<std::size_t>(n + 2);
  Vec<Rational> d(N, Rational(0));
  switch (label) {
    case CaseLabel::IsotropicPlane:
      d[0] = Rational(1, 2);
      d[1] = Rational(-1, 2);
      d[N - 2] = Rational(1, 2);
      d[N - 1] = Rational(-1, 2);
      break;
    case CaseLabel::Lorentz3_TrivialComplement:
    case CaseLabel::Signature21:
      d[0] = 1;
      d[N - 1] = -1;
      break;
    case CaseLabel::Lorentz3_SecondBlock:
      d[0] = d[1] = 1;
      d[N - 2] = d[N - 1] = -1;
      break;
    case CaseLabel::Signature23:
      d[0] = 2;
      d[1] = 1;
      d[N - 2] = -1;
      d[N - 1] = -2;
      break;
  }
  return d;
}

Representation build_case(CaseLabel label, int n) {
  if (n < 3) throw Error(ErrorKind::Domain, "build_case requires n >= 3");
  if (label == CaseLabel::Lorentz3_SecondBlock && n < 4)
    throw Error(ErrorKind::Domain, "two orthogonal Lorentzian 3-blocks need n >= 4");
  const std::size_t N = static_cast<std::size_t>(n + 2);
  // 1-based unit matrices keep the formulas close to the slot notation.
  auto E = [N](std::size_t i, std::size_t j) { return ExactMatrix::unit(N, i - 1, j - 1); };
  const std::size_t a = N - 1, b = N;  // slots n+1, n+2
  const Rational half(1, 2);
  ExactMatrix x(N, N), y(N, N), z(N, N);
  switch (label) {
    case CaseLabel::IsotropicPlane:
      x = (E(1, 1) - E(2, 2) + E(a, a) - E(b, b)) * half;
      y = E(1, 2) - E(a, b);
      z = (E(2, 1) - E(b, a)) * half;
      break;
    case CaseLabel::Lorentz3_TrivialComplement:
      x = E(1, 1) - E(b, b);
      y = E(1, 3) - E(3, b);
      z = E(3, 1) - E(b, 3);
      break;
    case CaseLabel::Lorentz3_SecondBlock:
      x = E(1, 1) - E(b, b) + E(2, 2) - E(a, a);
      y = E(1, 3) - E(3, b) + E(2, 4) - E(4, a);
      z = E(3, 1) - E(b, 3) + E(4, 2) - E(a, 4);
      break;
    case CaseLabel::Signature21:
      x = E(1, 1) - E(b, b);
      y = (E(1, 2) - E(1, a) + E(2, b) - E(a, b)) * half;
      z = E(2, 1) - E(a, 1) + E(b, 2) - E(b, a);
      break;
    case CaseLabel::Signature23:
      x = E(1, 1) * Rational(2) + E(2, 2) - E(a, a) - E(b, b) * Rational(2);
      y = E(1, 2) + E(2, 3) - E(3, a) - E(a, b);
      z = E(2, 1) * Rational(2) + E(3, 2) * Rational(3) - E(a, 3) * Rational(3) - E(b, a) * Rational(2);
      break;
  }
  return make_representation(std::move(x), std::move(y), std::move(z));
}

namespace {

template <class T>
std::optional<T> try_sqrt(const T& x);

template <>
std::optional<Rational> try_sqrt(const Rational& x) {
  return exact_sqrt(x);
}

template <>
std::optional<double> try_sqrt(const double& x) {
  if (x < -1e-12) return std::nullopt;
  return std::sqrt(std::max(0.0, x));
}

template <class T>
Matrix<T> convert(const ExactMatrix& m) {
  Matrix<T> r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Field<T>::from_rational(m(i, j));
  return r;
}

template <class T>
Vec<T> convert(const Vec<Rational>& v) {
  Vec<T> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Field<T>::from_rational(v[i]);
  return r;
}

/// Structural data found exactly by the classifier and handed to the basis
/// construction.
struct Structure {
  CaseLabel label;
  std::vector<Vec<Rational>> cyclic;   // v, Zv, Z^2 v, ...
  std::vector<Vec<Rational>> second;   // second block (case 2b)
  ExactMatrix half_weight_space;       // ker(X - 1/2) (case 1)
  ExactMatrix z;
};

template <class T>
class AdaptedBuilder {
 public:
  AdaptedBuilder(const So2nForm& form, const Structure& st)
      : st_(st), S_(convert<T>(form.S)), Z_(convert<T>(st.z)), N_(form.size()), slots_(N_) {}

  Matrix<T> build() {
    const std::size_t a = N_ - 1, b = N_;  // slots n+1, n+2
    std::vector<Vec<T>> cyc;
    for (const auto& c : st_.cyclic) cyc.push_back(convert<T>(c));
    switch (st_.label) {
      case CaseLabel::IsotropicPlane: {
        put(1, cyc[0]);
        put(2, cyc[1]);
        Matrix<T> w = convert<T>(st_.half_weight_space);
        std::optional<Vec<T>> partner;
        for (std::size_t j = 0; j < w.cols() && !partner; ++j) {
          T p = q(w.col(j), cyc[1]);
          if (!Field<T>::is_zero(p)) partner = scale(w.col(j), T(1) / p);
        }
        if (!partner) throw Error(ErrorKind::Classification, "no weight-1/2 partner for the isotropic plane");
        put(a, *partner);
        Vec<T> zp = Z_.apply(*partner);
        put(b, scale(zp, T(1) / q(cyc[0], zp)));
        break;
      }
      case CaseLabel::Lorentz3_TrivialComplement:
      case CaseLabel::Lorentz3_SecondBlock: {
        put_lorentz_block(cyc, 1, 3, b);
        if (st_.label == CaseLabel::Lorentz3_SecondBlock) {
          std::vector<Vec<T>> second;
          for (const auto& c : st_.second) second.push_back(convert<T>(c));
          put_lorentz_block(second, 2, 4, a);
        } else {
          auto [x, y] = hyperbolic_pair(complement());
          put(2, x);
          put(a, y);
        }
        break;
      }
      case CaseLabel::Signature21: {
        put(1, cyc[0]);
        put(b, scale(cyc[2], T(1) / q(cyc[0], cyc[2])));
        const T qq = q(cyc[1], cyc[1]);
        Vec<T> w = vector_with_norm(complement_of({cyc[0], cyc[1], cyc[2]}), -qq);
        put(2, add(cyc[1], w));
        put(a, scale(sub(w, cyc[1]), T(1) / (T(-2) * qq)));
        break;
      }
      case CaseLabel::Signature23: {
        put(1, cyc[0]);
        put(2, cyc[1]);
        put(3, scale(cyc[2], T(1) / root(q(cyc[2], cyc[2]))));
        put(a, scale(cyc[3], T(1) / q(cyc[1], cyc[3])));
        put(b, scale(cyc[4], T(1) / q(cyc[0], cyc[4])));
        break;
      }
    }
    fill_remaining();
    std::vector<Vec<T>> cols;
    for (auto& s : slots_) cols.push_back(*s);
    return Matrix<T>::from_columns(cols, N_);
  }

 private:
  T q(const Vec<T>& x, const Vec<T>& y) const { return bilinear(S_, x, y); }

  T root(const T& x) const {
    auto r = try_sqrt(x);
    if (!r || Field<T>::is_zero(*r)) throw Error(ErrorKind::InexactSqrt, "normalization needs an irrational root");
    return *r;
  }

  void put(std::size_t slot, Vec<T> v) { slots_[slot - 1] = std::move(v); }

  /// e_first = v, e_mid = Zv / sqrt(Q(Zv,Zv)), e_last = Z^2 v / Q(v, Z^2 v).
  void put_lorentz_block(const std::vector<Vec<T>>& c, std::size_t first, std::size_t mid, std::size_t last) {
    put(first, c[0]);
    put(mid, scale(c[1], T(1) / root(q(c[1], c[1]))));
    put(last, scale(c[2], T(1) / q(c[0], c[2])));
  }

  std::vector<Vec<T>> assigned() const {
    std::vector<Vec<T>> out;
    for (const auto& s : slots_)
      if (s) out.push_back(*s);
    return out;
  }

  Matrix<T> complement_of(const std::vector<Vec<T>>& vs) const {
    Matrix<T> rows(vs.size(), N_);
    for (std::size_t k = 0; k < vs.size(); ++k) {
      Vec<T> sv = S_.apply(vs[k]);
      for (std::size_t j = 0; j < N_; ++j) rows(k, j) = sv[j];
    }
    return nullspace(rows);
  }

  Matrix<T> complement() const { return complement_of(assigned()); }

  /// Columns of `space` followed by a Q-orthogonalized copy.
  std::vector<Vec<T>> candidates(const Matrix<T>& space) const {
    std::vector<Vec<T>> out, orth;
    for (std::size_t j = 0; j < space.cols(); ++j) out.push_back(space.col(j));
    for (const auto& c : out) {
      Vec<T> w = c;
      for (const auto& o : orth) {
        T oo = q(o, o);
        if (!Field<T>::is_zero(oo)) w = sub(w, scale(o, q(w, o) / oo));
      }
      if (!is_zero_vec(w)) orth.push_back(w);
    }
    out.insert(out.end(), orth.begin(), orth.end());
    return out;
  }

  /// The candidates, then their pairwise sums and differences.
  std::vector<Vec<T>> with_pair_sums(std::vector<Vec<T>> cand) const {
    const std::size_t k = cand.size();
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) {
        cand.push_back(add(cand[i], cand[j]));
        cand.push_back(sub(cand[i], cand[j]));
      }
    return cand;
  }

  /// Isotropic x and y with Q(x, y) = 1 inside a Lorentzian subspace.
  std::pair<Vec<T>, Vec<T>> hyperbolic_pair(const Matrix<T>& space) const {
    auto cand = candidates(space);
    std::optional<Vec<T>> iso;
    for (const auto& c : cand)
      if (!is_zero_vec(c) && Field<T>::is_zero(q(c, c))) {
        iso = c;
        break;
      }
    for (std::size_t i = 0; i < cand.size() && !iso; ++i)
      for (std::size_t j = 0; j < cand.size() && !iso; ++j) {
        if (i == j) continue;
        const T aa = q(cand[i], cand[i]), ab = q(cand[i], cand[j]), bb = q(cand[j], cand[j]);
        if (Field<T>::is_zero(bb)) continue;
        auto s = try_sqrt(T(ab * ab - aa * bb));
        if (!s) continue;
        Vec<T> x = add(cand[i], scale(cand[j], T((-ab + *s) / bb)));
        if (!is_zero_vec(x)) iso = x;
      }
    if (!iso) throw Error(ErrorKind::InexactSqrt, "no rational isotropic vector in the complement");
    for (const auto& c : cand) {
      T p = q(*iso, c);
      if (Field<T>::is_zero(p)) continue;
      Vec<T> y = scale(c, T(1) / p);
      y = sub(y, scale(*iso, T(q(y, y) / T(2))));
      return {*iso, y};
    }
    throw Error(ErrorKind::Classification, "complement of the cyclic block is degenerate");
  }

  /// Some w in a positive definite space with Q(w, w) = target.
  Vec<T> vector_with_norm(const Matrix<T>& space, const T& target) const {
    for (const auto& c : with_pair_sums(candidates(space))) {
        T cc = q(c, c);
        if (Field<T>::is_zero(cc)) continue;
        auto s = try_sqrt(T(target / cc));
        if (s) return scale(c, *s);
    }
    throw Error(ErrorKind::InexactSqrt, "no rational vector of the required norm");
  }

  /// Orthonormal completion of the unassigned slots, in slot order.
  void fill_remaining() {
    std::vector<std::size_t> empty;
    for (std::size_t s = 0; s < N_; ++s)
      if (!slots_[s]) empty.push_back(s);
    if (empty.empty()) return;
    auto pool = with_pair_sums(candidates(complement()));
    std::vector<Vec<T>> done;
    for (std::size_t s : empty) {
      std::optional<Vec<T>> pick;
      bool any_positive = false;
      for (const auto& c : pool) {
        Vec<T> w = c;
        for (const auto& d : done) w = sub(w, scale(d, q(w, d)));
        T ww = q(w, w);
        if (Field<T>::is_zero(ww) || ww < T(0)) continue;
        any_positive = true;
        if (auto r = try_sqrt(ww)) {
          pick = scale(w, T(1) / *r);
          break;
        }
      }
      if (!pick) {
        if (any_positive) throw Error(ErrorKind::InexactSqrt, "orthonormal completion needs an irrational root");
        throw Error(ErrorKind::Classification, "orthogonal complement is not positive definite");
      }
      done.push_back(*pick);
      slots_[s] = *pick;
    }
  }

  const Structure& st_;
  Matrix<T> S_;
  Matrix<T> Z_;
  std::size_t N_;
  std::vector<std::optional<Vec<T>>> slots_;
};

template <class T>
double gram_residual(const Matrix<T>& b, const ExactMatrix& s) {
  Matrix<T> st = convert<T>(s);
  return (b.transpose() * st * b - st).max_abs();
}

template <class T>
double normal_form_residual(const Matrix<T>& b, const ExactMatrix& x, const Vec<Rational>& diag) {
  Matrix<T> d = inverse(b) * convert<T>(x) * b;
  return (d - Matrix<T>::diagonal(convert<T>(diag))).max_abs();
}

bool restriction_vanishes(const Representation& rep, const ExactMatrix& basis) {
  for (const auto* g : {&rep.images.X, &rep.images.Y, &rep.images.Z})
    if (!((*g) * basis).is_zero()) return false;
  return true;
}

}  // namespace

Classification classify_embedding(const Representation& input, const So2nForm& form) {
  if (input.dim() != form.size()) throw Error(ErrorKind::Dimension, "representation size does not match so(2,n)");
  for (const auto* g : {&input.images.X, &input.images.Y, &input.images.Z})
    if (!is_member(*g, form)) throw Error(ErrorKind::Membership, "image is not in so(2,n)");

  Classification out;
  Representation rep = input;
  if (!rep.residuals().ok) {
    rep = Representation{{-input.images.X, -input.images.Y, -input.images.Z}};
    if (!rep.residuals().ok)
      throw Error(ErrorKind::Representation, "neither the triple nor its negative satisfies the sl(2) relations");
    out.sign = TripleSign::Negated;
  }

  HighestWeightData hw = highest_weight_data(rep);
  if (sgn(hw.weight) <= 0) throw Error(ErrorKind::Precondition, "representation is trivial: no isotropic weight vector");
  if (sgn(form.eval(hw.vector, hw.vector)) != 0)
    throw Error(ErrorKind::Precondition, "highest weight vector is not isotropic");
  out.highest_weight_vector = hw.vector;
  out.highest_weight = hw.weight;
  out.cyclic_dim = hw.cyclic.cols();
  ExactMatrix gram = hw.cyclic.transpose() * form.S * hw.cyclic;
  out.cyclic_signature = signature(gram);

  // Nilpotency of rho(Y) on the cyclic subspace.
  {
    ExactMatrix p = hw.cyclic;
    for (unsigned k = 1; k <= out.cyclic_dim + 1; ++k) {
      p = rep.images.Y * p;
      if (p.is_zero()) {
        out.nilpotency_on_cyclic = k;
        break;
      }
    }
  }

  Structure st;
  st.z = rep.images.Z;
  for (std::size_t j = 0; j < hw.cyclic.cols(); ++j) st.cyclic.push_back(hw.cyclic.col(j));

  const Inertia sig = out.cyclic_signature;
  auto perp = [&](const ExactMatrix& cols) { return nullspace(ExactMatrix((form.S * cols).transpose())); };
  if (out.cyclic_dim == 2 && gram.is_zero()) {
    st.label = CaseLabel::IsotropicPlane;
    st.half_weight_space = nullspace(shifted(rep.images.X, Rational(1, 2)));
  } else if (out.cyclic_dim == 3 && sig == Inertia{2, 1, 0}) {
    ExactMatrix vp = perp(hw.cyclic);
    if (restriction_vanishes(rep, vp)) {
      st.label = CaseLabel::Lorentz3_TrivialComplement;
    } else {
      st.label = CaseLabel::Lorentz3_SecondBlock;
      ExactMatrix top = intersect(intersect(vp, nullspace(rep.images.Y)), nullspace(shifted(rep.images.X, 1)));
      if (top.cols() == 0) throw Error(ErrorKind::Classification, "complement carries no weight-1 highest weight vector");
      Vec<Rational> v2 = normalize_first_nonzero(top.col(0));
      st.second = {v2, rep.images.Z.apply(v2), rep.images.Z.apply(rep.images.Z.apply(v2))};
      ExactMatrix block = ExactMatrix::from_columns(st.second, form.size());
      if (!restriction_vanishes(rep, perp(hstack<Rational>({hw.cyclic, block}))))
        throw Error(ErrorKind::Classification, "more than two nontrivial blocks in a Lorentzian embedding");
    }
  } else if (out.cyclic_dim == 3 && sig == Inertia{1, 2, 0}) {
    st.label = CaseLabel::Signature21;
  } else if (out.cyclic_dim == 5 && sig == Inertia{3, 2, 0}) {
    st.label = CaseLabel::Signature23;
  } else {
    throw Error(ErrorKind::Classification, "cyclic subspace of dimension " + std::to_string(out.cyclic_dim) +
                                               " with signature (+" + std::to_string(sig.pos) + ", -" +
                                               std::to_string(sig.neg) + ", 0x" + std::to_string(sig.null) +
                                               ") matches none of the cases");
  }
  out.label = st.label;
  out.normal_form = expected_normal_form(st.label, form.n);

  try {
    ExactMatrix b = AdaptedBuilder<Rational>(form, st).build();
    out.gram_residual = gram_residual(b, form.S);
    out.normal_form_residual = normal_form_residual(b, rep.images.X, out.normal_form);
    out.basis = to_real(b);
    out.exact_basis = std::move(b);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InexactSqrt) throw;
    RealMatrix b = AdaptedBuilder<double>(form, st).build();
    out.gram_residual = gram_residual(b, form.S);
    out.normal_form_residual = normal_form_residual(b, rep.images.X, out.normal_form);
    out.basis = std::move(b);
  }
  return out;
}

}  // namespace conflab
