#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "conflab/matrix.hpp"
#include "conflab/rational.hpp"

namespace conflab {

/// Univariate polynomial with exact rational coefficients, stored from the
/// constant term upwards and kept trimmed (no trailing zero coefficients).
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);

  static Polynomial constant(const Rational& c);
  /// The monic linear factor (t - root).
  static Polynomial linear_factor(const Rational& root);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  Rational coeff(int i) const;
  Rational leading() const;
  const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Rational& s) const;
  bool operator==(const Polynomial& o) const { return coeffs_ == o.coeffs_; }

  /// Euclidean division: returns (quotient, remainder).
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const;

  Polynomial derivative() const;
  Polynomial monic() const;

  Rational eval(const Rational& x) const;
  std::complex<double> eval(std::complex<double> x) const;
  ExactMatrix eval(const ExactMatrix& m) const;

  /// Floating roots from the companion matrix eigenvalues.
  std::vector<std::complex<double>> numeric_roots() const;

  std::string to_string() const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

Polynomial gcd(Polynomial a, Polynomial b);
Polynomial squarefree_part(const Polynomial& p);
bool is_squarefree(const Polynomial& p);

/// Exact characteristic polynomial det(tI - A) (Faddeev-LeVerrier).
Polynomial characteristic_polynomial(const ExactMatrix& a);

/// Exact minimal polynomial via the first linear dependency among the
/// vectorized powers I, A, A^2, ...
Polynomial minimal_polynomial(const ExactMatrix& a);

/// Distinct rational roots of p. Candidates come from the floating roots
/// by continued-fraction reconstruction; each is accepted only after the
/// exact test p(r) == 0.
std::vector<Rational> rational_roots(const Polynomial& p);

}  // namespace conflab
