#include "conflab/holonomy.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>

#include "conflab/errors.hpp"
#include "conflab/polynomial.hpp"

namespace conflab {

namespace {

std::size_t sz(int v) { return static_cast<std::size_t>(v); }

void require_n(int n) {
  if (n < 3) throw Error(ErrorKind::Domain, "parabolic computations need n >= 3");
}

ExactMatrix exp_nilpotent(const ExactMatrix& z) {
  ExactMatrix out = ExactMatrix::identity(z.rows());
  ExactMatrix term = ExactMatrix::identity(z.rows());
  for (unsigned k = 1; k <= z.rows(); ++k) {
    term = term * z / Rational(k);
    if (term.is_zero()) return out;
    out += term;
  }
  if (!(term * z).is_zero()) throw Error(ErrorKind::Domain, "exponential of a non-nilpotent matrix");
  return out;
}

// Extended Euclid: returns (g, s, t) with s a + t b = g, g monic.
struct Xgcd {
  Polynomial g, s, t;
};

Xgcd xgcd(Polynomial a, Polynomial b) {
  Polynomial s0 = Polynomial::constant(1), s1;
  Polynomial t0, t1 = Polynomial::constant(1);
  while (!b.is_zero()) {
    auto [q, r] = a.divmod(b);
    a = b;
    b = r;
    Polynomial s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = s1;
    s1 = s2;
    t0 = t1;
    t1 = t2;
  }
  const Rational lead = a.leading();
  const Rational inv = Rational(1) / lead;
  return {a * inv, s0 * inv, t0 * inv};
}

struct Factor {
  Polynomial poly;
  /// Common modulus of the roots, when rational.
  Rational modulus;
};

// Splits a squarefree polynomial into rational linear factors and
// conjugate-pair quadratics with rational modulus. Empty when impossible.
std::optional<std::vector<Factor>> split_factors(const Polynomial& q) {
  std::vector<Factor> out;
  Polynomial rest = q.monic();
  for (const Rational& r : rational_roots(rest)) {
    Polynomial lin = Polynomial::linear_factor(r);
    rest = rest.divmod(lin).first;
    out.push_back({lin, abs(r)});
  }
  if (rest.degree() <= 0) return out;
  auto roots = rest.numeric_roots();
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    if (std::abs(roots[i].imag()) < 1e-9) return std::nullopt;  // irrational real root
    used[i] = true;
    std::size_t partner = roots.size();
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (!used[j] && std::abs(roots[j] - std::conj(roots[i])) < 1e-7) {
        partner = j;
        break;
      }
    if (partner == roots.size()) return std::nullopt;
    used[partner] = true;
    const Rational b = rational_approximation(-2 * roots[i].real());
    const Rational c = rational_approximation(std::norm(roots[i]));
    Polynomial quad({c, b, Rational(1)});
    auto [quot, rem] = rest.divmod(quad);
    if (!rem.is_zero()) return std::nullopt;
    auto m = exact_sqrt(c);
    if (!m) return std::nullopt;
    rest = quot;
    out.push_back({quad, *m});
  }
  if (rest.degree() > 0) return std::nullopt;
  return out;
}

ExactMatrix semisimple_part(const ExactMatrix& p, const Polynomial& q) {
  const Polynomial dq = q.derivative();
  ExactMatrix s = p;
  for (int it = 0; it < 64; ++it) {
    ExactMatrix qs = q.eval(s);
    if (qs.is_zero()) return s;
    s = s - qs * inverse(dq.eval(s));
  }
  throw Error(ErrorKind::Precision, "semisimple iteration did not terminate");
}

double max_abs(const RealMatrix& m) {
  double r = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r = std::max(r, std::abs(m(i, j)));
  return r;
}

Eigen::MatrixXd to_eigen(const RealMatrix& m) {
  Eigen::MatrixXd e(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
  return e;
}

RealMatrix from_eigen(const Eigen::MatrixXd& e) {
  RealMatrix m(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j) m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = e(i, j);
  return m;
}

JordanTriple floating_jordan(const ExactMatrix& p, const Polynomial& q) {
  const Eigen::MatrixXd pe = to_eigen(to_real(p));
  const auto N = pe.rows();
  auto eval = [&](const Polynomial& poly, const Eigen::MatrixXd& m) {
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(N, N);
    for (int k = poly.degree(); k >= 0; --k)
      acc = acc * m + poly.coeff(k).get_d() * Eigen::MatrixXd::Identity(N, N);
    return acc;
  };
  const Polynomial dq = q.derivative();
  Eigen::MatrixXd s = pe;
  for (int it = 0; it < 100; ++it) {
    const Eigen::MatrixXd step = eval(q, s) * eval(dq, s).inverse();
    s -= step;
    if (step.cwiseAbs().maxCoeff() < 1e-15 * std::max(1.0, s.cwiseAbs().maxCoeff())) break;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(s);
  const Eigen::MatrixXcd v = es.eigenvectors();
  Eigen::VectorXcd mod = es.eigenvalues().cwiseAbs().cast<std::complex<double>>();
  const Eigen::MatrixXcd hc = v * mod.asDiagonal() * v.inverse();
  const Eigen::MatrixXd h = hc.real();
  const Eigen::MatrixXd e = s * h.inverse();
  const Eigen::MatrixXd u = s.inverse() * pe;

  JordanTriple out;
  out.exact = false;
  out.h_real = from_eigen(h);
  out.u_real = from_eigen(u);
  out.e_real = from_eigen(e);
  double res = hc.imag().cwiseAbs().maxCoeff();
  res = std::max(res, (h * u * e - pe).cwiseAbs().maxCoeff());
  res = std::max(res, (h * u - u * h).cwiseAbs().maxCoeff());
  res = std::max(res, (h * e - e * h).cwiseAbs().maxCoeff());
  res = std::max(res, (u * e - e * u).cwiseAbs().maxCoeff());
  out.residual = res;
  if (!(res <= 1e-9)) throw Error(ErrorKind::Precision, "floating Jordan decomposition residual " + std::to_string(res));
  return out;
}

}  // namespace

ExactMatrix middle_form(int n) {
  require_n(n);
  ExactMatrix j(sz(n), sz(n));
  j(0, sz(n - 1)) = 1;
  j(sz(n - 1), 0) = 1;
  for (int i = 1; i < n - 1; ++i) j(sz(i), sz(i)) = 1;
  return j;
}

ExactMatrix g1_element(const Vec<Rational>& z, int n) {
  require_n(n);
  if (z.size() != sz(n)) throw Error(ErrorKind::Dimension, "g_1 coordinates must have length n");
  const std::size_t N = sz(n + 2);
  ExactMatrix e(N, N);
  const Vec<Rational> jz = middle_form(n).apply(z);
  for (std::size_t i = 0; i < sz(n); ++i) {
    e(0, i + 1) = z[i];
    e(i + 1, N - 1) = -jz[i];
  }
  return e;
}

ExactMatrix exp_g1(const Vec<Rational>& z, int n) { return exp_nilpotent(g1_element(z, n)); }

ExactMatrix g_beta_element(const Vec<Rational>& t, int n) {
  require_n(n);
  if (t.size() != sz(n - 2)) throw Error(ErrorKind::Dimension, "g_beta coordinates must have length n-2");
  const std::size_t N = sz(n + 2);
  ExactMatrix e(N, N);
  for (std::size_t m = 0; m < t.size(); ++m) {
    e(1, m + 2) = t[m];
    e(m + 2, N - 2) = -t[m];
  }
  return e;
}

ExactMatrix exp_g_beta(const Vec<Rational>& t, int n) { return exp_nilpotent(g_beta_element(t, n)); }

ExactMatrix g0_element(const Rational& x, const ExactMatrix& M) {
  if (sgn(x) == 0) throw Error(ErrorKind::Domain, "G_0 scale must be nonzero");
  const std::size_t n = M.rows();
  ExactMatrix g(n + 2, n + 2);
  g(0, 0) = x;
  g(n + 1, n + 1) = Rational(1) / x;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i + 1, j + 1) = M(i, j);
  return g;
}

ExactMatrix ParabolicElement::g0() const { return g0_element(x, M); }
ExactMatrix ParabolicElement::exp_z1() const { return exp_g1(Z, form.n); }

ParabolicElement decompose_P(const ExactMatrix& p, int n) {
  So2nForm form = So2nForm::make(n);
  if (p.rows() != form.size() || !p.is_square()) throw Error(ErrorKind::Dimension, "matrix size must be n+2");
  if (!(p.transpose() * form.S * p - form.S).is_zero())
    throw Error(ErrorKind::Membership, "matrix does not preserve the quadratic form");
  for (std::size_t i = 1; i < p.rows(); ++i)
    if (sgn(p(i, 0)) != 0) throw Error(ErrorKind::NotInParabolic, "matrix moves the line through e_1");

  ParabolicElement pe;
  pe.form = form;
  pe.matrix = p;
  pe.x = p(0, 0);
  pe.M = ExactMatrix(sz(n), sz(n));
  pe.Z.assign(sz(n), Rational(0));
  for (std::size_t i = 0; i < sz(n); ++i) {
    pe.Z[i] = p(0, i + 1) / pe.x;
    for (std::size_t j = 0; j < sz(n); ++j) pe.M(i, j) = p(i + 1, j + 1);
  }
  if (pe.g0() * pe.exp_z1() != p)
    throw Error(ErrorKind::Inconsistency, "factorization g_0 exp(Z_1) does not reproduce the matrix");

  // Splitting of the G_0 factor when it fixes X_{-alpha}.
  bool fixes = true;
  for (std::size_t i = 1; i < sz(n); ++i)
    if (sgn(pe.M(i, 0)) != 0) fixes = false;
  if (fixes && pe.M(0, 0) == pe.x) {
    Vec<Rational> t(sz(n - 2));
    ExactMatrix k(sz(n - 2), sz(n - 2));
    for (std::size_t m = 0; m < t.size(); ++m) {
      t[m] = pe.M(0, m + 1) / pe.x;
      for (std::size_t c = 0; c < t.size(); ++c) k(m, c) = pe.M(m + 1, c + 1);
    }
    ExactMatrix diag(sz(n), sz(n));
    diag(0, 0) = pe.x;
    diag(sz(n - 1), sz(n - 1)) = Rational(1) / pe.x;
    for (std::size_t m = 0; m < t.size(); ++m)
      for (std::size_t c = 0; c < t.size(); ++c) diag(m + 1, c + 1) = k(m, c);
    ExactMatrix eb = exp_g_beta(t, n);
    ExactMatrix eb_mid(sz(n), sz(n));
    for (std::size_t i = 0; i < sz(n); ++i)
      for (std::size_t j = 0; j < sz(n); ++j) eb_mid(i, j) = eb(i + 1, j + 1);
    if (diag * eb_mid == pe.M) {
      pe.k = k;
      pe.T_beta = t;
    }
  }
  return pe;
}

JordanTriple jordan_in_P(const ParabolicElement& p) {
  const ExactMatrix& a = p.matrix;
  const Polynomial q = squarefree_part(characteristic_polynomial(a)).monic();
  const ExactMatrix s = semisimple_part(a, q);
  auto factors = split_factors(q);
  if (!factors) return floating_jordan(a, q);

  const std::size_t N = a.rows();
  ExactMatrix h(N, N), h_inv(N, N);
  for (std::size_t i = 0; i < factors->size(); ++i) {
    Polynomial others = Polynomial::constant(1);
    for (std::size_t j = 0; j < factors->size(); ++j)
      if (j != i) others = others * (*factors)[j].poly;
    const Xgcd g = xgcd(others, (*factors)[i].poly);
    if (g.g.degree() != 0) throw Error(ErrorKind::Inconsistency, "factors of a squarefree polynomial share a root");
    const ExactMatrix proj = (g.s * others).eval(s);
    h += proj * (*factors)[i].modulus;
    h_inv += proj * (Rational(1) / (*factors)[i].modulus);
  }
  JordanTriple out;
  out.exact = true;
  out.h = h;
  out.e = s * h_inv;
  out.u = inverse(s) * a;
  if (out.h * out.u * out.e != a || out.h * out.u != out.u * out.h || out.h * out.e != out.e * out.h ||
      out.u * out.e != out.e * out.u)
    throw Error(ErrorKind::Inconsistency, "Jordan factors do not commute or multiply back");
  out.h_real = to_real(out.h);
  out.u_real = to_real(out.u);
  out.e_real = to_real(out.e);
  return out;
}

ExactMatrix hyperbolic_diagonal(const Rational& lambda, int n) {
  require_n(n);
  const std::size_t N = sz(n + 2);
  ExactMatrix d = ExactMatrix::identity(N);
  d(0, 0) = d(1, 1) = Rational(1) / lambda;
  d(N - 2, N - 2) = d(N - 1, N - 1) = lambda;
  return d;
}

HyperbolicNormalization normalize_hyperbolic(const ParabolicElement& p_h, const Rational& lambda) {
  const int n = p_h.n();
  if (!(lambda > 0 && lambda < 1)) throw Error(ErrorKind::Precondition, "lambda must lie in (0, 1)");
  if (p_h.x != Rational(1) / lambda) throw Error(ErrorKind::Precondition, "G_0 scale is not 1/lambda");
  if (!p_h.k || *p_h.k != ExactMatrix::identity(sz(n - 2)))
    throw Error(ErrorKind::Precondition, "G_0 factor is not of the form diag(x, x, I, 1/x, 1/x) exp(T_beta)");

  HyperbolicNormalization out;
  const Rational one_minus = Rational(1) - lambda;
  out.T0 = scale(*p_h.T_beta, Rational(1 / one_minus));
  out.p_beta = exp_g_beta(out.T0, n);
  const ExactMatrix conj = out.p_beta * p_h.matrix * inverse(out.p_beta);
  const ParabolicElement c = decompose_P(conj, n);
  if (sgn(c.z_alpha()) != 0)
    throw Error(ErrorKind::Inconsistency, "alpha coordinate of Ad(p_beta) Z_1 is " + to_string(c.z_alpha()) +
                                              "; the element is not R-split");
  out.Z1.assign(sz(n), Rational(0));
  for (std::size_t i = 1; i + 1 < sz(n); ++i) out.Z1[i] = c.Z[i] / one_minus;
  out.Z1[sz(n - 1)] = c.Z[sz(n - 1)] / (Rational(1) - lambda * lambda);
  out.p_1 = exp_g1(out.Z1, n);
  out.result = out.p_1 * conj * inverse(out.p_1);
  if (out.result != hyperbolic_diagonal(lambda, n))
    throw Error(ErrorKind::Inconsistency, "conjugated element is not diagonal");
  return out;
}

AffineAction affine_action(const ParabolicElement& p) {
  AffineAction a;
  a.linear = p.M * p.x;
  a.translation = scale(a.linear.apply(middle_form(p.n()).apply(p.Z)), Rational(-1));
  return a;
}

std::optional<Vec<Rational>> affine_fixed_point(const ParabolicElement& p) {
  const AffineAction a = affine_action(p);
  const ExactMatrix lhs = ExactMatrix::identity(a.linear.rows()) - a.linear;
  return solve(lhs, a.translation);
}

bool is_linearizable(const ParabolicElement& p) { return affine_fixed_point(p).has_value(); }

DerivativeNormalForm derivative_normal_form(const ParabolicElement& p) {
  const JordanTriple j = jordan_in_P(p);
  const bool trivial_u = j.exact ? j.u == ExactMatrix::identity(p.matrix.rows())
                                 : max_abs(j.u_real - RealMatrix::identity(p.matrix.rows())) < 1e-9;
  if (!trivial_u) throw Error(ErrorKind::NormalFormUnavailable, "unipotent Jordan factor is not trivial");
  if (!is_linearizable(p)) throw Error(ErrorKind::Precondition, "element has no fixed point in R^{1,n-1}");
  return DerivativeNormalForm{p.M / p.x, Rational(1) / p.x};
}

ExactMatrix x_minus_alpha(int n) {
  for (const auto& e : so2n_basis(n))
    if (e.label == RootLabel::NegAlpha) return e.matrix;
  throw Error(ErrorKind::Inconsistency, "basis has no g_{-alpha} element");
}

ExactMatrix a_alpha(int n) {
  const std::size_t N = sz(n + 2);
  ExactMatrix a(N, N);
  const Rational c = Rational(1, 2 * n);
  a(0, 0) = c;
  a(1, 1) = -c;
  a(N - 2, N - 2) = c;
  a(N - 1, N - 1) = -c;
  return a;
}

UnipotentObstruction unipotent_obstruction(const Rational& mu, int n) {
  const ExactMatrix x = x_minus_alpha(n);
  const ExactMatrix z = cartan_involution(x) * mu;
  const ExactMatrix g = exp_nilpotent(z);
  const ExactMatrix ad = g * x * inverse(g);
  GradedElement d = root_decompose(ad - x, n);
  ExactMatrix r = d.total;
  for (auto l : {RootLabel::Alpha, RootLabel::AlphaPlusBeta, RootLabel::AlphaPlus2Beta}) r -= d.component(l);

  std::vector<ExactMatrix> basis;
  for (const auto& e : so2n_basis(n)) basis.push_back(e.matrix);
  UnipotentObstruction out;
  out.residual = r;
  out.b_theta = -killing_form(basis, cartan_involution(x), x);
  const ExactMatrix aa = a_alpha(n);
  const Rational c = r(0, 0) / aa(0, 0);
  if (r == aa * c) out.coefficient = c;
  return out;
}

}  // namespace conflab
