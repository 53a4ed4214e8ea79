#include "conflab/polynomial.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <sstream>

namespace conflab {

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::constant(const Rational& c) { return Polynomial({c}); }

Polynomial Polynomial::linear_factor(const Rational& root) { return Polynomial({-root, Rational(1)}); }

void Polynomial::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

Rational Polynomial::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

Rational Polynomial::leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<Rational> c(std::max(coeffs_.size(), o.coeffs_.size()), Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[i] += o.coeffs_[i];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * Rational(-1); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Rational> c(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(const Rational& s) const {
  std::vector<Rational> c(coeffs_);
  for (auto& x : c) x *= s;
  return Polynomial(std::move(c));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& d) const {
  if (d.is_zero()) throw Error(ErrorKind::Domain, "polynomial division by zero");
  std::vector<Rational> rem(coeffs_);
  int dd = d.degree();
  if (degree() < dd) return {Polynomial(), *this};
  std::vector<Rational> q(static_cast<std::size_t>(degree() - dd + 1), Rational(0));
  Rational lead = d.leading();
  for (int k = degree() - dd; k >= 0; --k) {
    Rational f = rem[static_cast<std::size_t>(k + dd)] / lead;
    q[static_cast<std::size_t>(k)] = f;
    if (sgn(f) == 0) continue;
    for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(k + j)] -= f * d.coeffs_[static_cast<std::size_t>(j)];
  }
  return {Polynomial(std::move(q)), Polynomial(std::move(rem))};
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> c(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) c[i - 1] = coeffs_[i] * Rational(static_cast<long>(i));
  return Polynomial(std::move(c));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return {};
  return *this * (Rational(1) / leading());
}

Rational Polynomial::eval(const Rational& x) const {
  Rational r = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * x + *it;
  return r;
}

std::complex<double> Polynomial::eval(std::complex<double> x) const {
  std::complex<double> r = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * x + it->get_d();
  return r;
}

ExactMatrix Polynomial::eval(const ExactMatrix& m) const {
  ExactMatrix r(m.rows(), m.cols());
  ExactMatrix id = ExactMatrix::identity(m.rows());
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * m + id * (*it);
  return r;
}

std::vector<std::complex<double>> Polynomial::numeric_roots() const {
  int d = degree();
  if (d < 1) return {};
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
  double lead = leading().get_d();
  for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) companion(i, d - 1) = -coeff(i).get_d() / lead;
  Eigen::EigenSolver<Eigen::MatrixXd> es(companion, false);
  std::vector<std::complex<double>> roots;
  for (int i = 0; i < d; ++i) roots.push_back(es.eigenvalues()(i));
  return roots;
}

std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    Rational c = coeff(i);
    if (sgn(c) == 0) continue;
    if (!first) os << (sgn(c) > 0 ? " + " : " - ");
    else if (sgn(c) < 0) os << "-";
    Rational a = abs(c);
    if (i == 0 || a != 1) os << a.get_str();
    if (i > 0) os << (i == 0 || a != 1 ? "*" : "") << "t" << (i > 1 ? "^" + std::to_string(i) : "");
    first = false;
  }
  return os.str();
}

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Polynomial squarefree_part(const Polynomial& p) {
  if (p.degree() < 1) return p.monic();
  Polynomial g = gcd(p, p.derivative());
  return p.divmod(g).first.monic();
}

bool is_squarefree(const Polynomial& p) { return gcd(p, p.derivative()).degree() == 0; }

Polynomial characteristic_polynomial(const ExactMatrix& a) {
  if (!a.is_square()) throw Error(ErrorKind::Dimension, "characteristic polynomial of a non-square matrix");
  const std::size_t n = a.rows();
  std::vector<Rational> c(n + 1, Rational(0));
  c[n] = 1;
  ExactMatrix m(n, n);
  ExactMatrix id = ExactMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m + id * c[n - k + 1];
    c[n - k] = -(a * m).trace() / Rational(static_cast<long>(k));
  }
  return Polynomial(std::move(c));
}

Polynomial minimal_polynomial(const ExactMatrix& a) {
  if (!a.is_square()) throw Error(ErrorKind::Dimension, "minimal polynomial of a non-square matrix");
  const std::size_t n = a.rows();
  std::vector<Vec<Rational>> powers;
  ExactMatrix p = ExactMatrix::identity(n);
  for (std::size_t k = 0; k <= n; ++k) {
    powers.push_back(p.data());
    ExactMatrix stack = ExactMatrix::from_columns(powers, n * n);
    ExactMatrix ns = nullspace(stack);
    if (ns.cols() > 0) {
      // The newest power is the only free column, so its coefficient is 1.
      std::vector<Rational> c(ns.col(0));
      return Polynomial(std::move(c)).monic();
    }
    p = p * a;
  }
  throw Error(ErrorKind::Precision, "minimal polynomial search exceeded the matrix size");
}

std::vector<Rational> rational_roots(const Polynomial& p) {
  std::vector<Rational> roots;
  if (p.degree() < 1) return roots;
  // Repeated roots are numerically fragile; work with the square-free part.
  Polynomial q = squarefree_part(p);
  for (const auto& z : q.numeric_roots()) {
    double scale = std::max(1.0, std::abs(z));
    if (std::abs(z.imag()) > 1e-6 * scale) continue;
    Rational cand = rational_approximation(z.real());
    if (sgn(q.eval(cand)) != 0) continue;
    if (std::find(roots.begin(), roots.end(), cand) == roots.end()) roots.push_back(cand);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace conflab
