#include "conflab/rational.hpp"

#include <cctype>
#include <cstdlib>

#include "conflab/errors.hpp"

namespace conflab {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Rational pow10(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(mpz_class(1), p) : Rational(p);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw Error(ErrorKind::Domain, "empty rational literal");

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  Rational result;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw Error(ErrorKind::Domain, "malformed rational literal '" + std::string(text) + "'");
    mpz_class d(std::string(den), 10);
    if (d == 0) throw Error(ErrorKind::Domain, "zero denominator in '" + std::string(text) + "'");
    result = Rational(mpz_class(std::string(num), 10), d);
    result.canonicalize();
  } else {
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      auto exp_part = s.substr(e + 1);
      bool exp_neg = false;
      if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
        exp_neg = exp_part.front() == '-';
        exp_part.remove_prefix(1);
      }
      if (!all_digits(exp_part))
        throw Error(ErrorKind::Domain, "malformed exponent in '" + std::string(text) + "'");
      exponent = std::strtol(std::string(exp_part).c_str(), nullptr, 10);
      if (exp_neg) exponent = -exponent;
      s = s.substr(0, e);
    }
    std::string digits;
    long frac_len = 0;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
      auto int_part = s.substr(0, dot);
      auto frac_part = s.substr(dot + 1);
      if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)) ||
          (int_part.empty() && frac_part.empty()))
        throw Error(ErrorKind::Domain, "malformed decimal literal '" + std::string(text) + "'");
      digits = std::string(int_part) + std::string(frac_part);
      frac_len = static_cast<long>(frac_part.size());
    } else {
      if (!all_digits(s)) throw Error(ErrorKind::Domain, "malformed literal '" + std::string(text) + "'");
      digits = std::string(s);
    }
    result = Rational(mpz_class(digits, 10)) * pow10(exponent - frac_len);
    result.canonicalize();
  }
  return negative ? Rational(-result) : result;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

Rational Field<Rational>::sqrt(const Rational& x) {
  if (auto r = exact_sqrt(x)) return *r;
  throw Error(ErrorKind::InexactSqrt, "square root of " + x.get_str() + " is not rational");
}

Rational rational_approximation(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) throw Error(ErrorKind::Domain, "cannot approximate a non-finite value");
  bool negative = x < 0;
  double v = std::abs(x);
  // Convergents h/k of the continued fraction of v.
  mpz_class h_prev = 1, h = static_cast<long>(std::floor(v));
  mpz_class k_prev = 0, k = 1;
  double frac = v - std::floor(v);
  for (int iter = 0; iter < 64 && frac > 1e-15; ++iter) {
    double inv = 1.0 / frac;
    long a = static_cast<long>(std::floor(inv));
    frac = inv - static_cast<double>(a);
    mpz_class h_next = a * h + h_prev;
    mpz_class k_next = a * k + k_prev;
    if (k_next > max_den) break;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
  }
  Rational r(h, k);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

}  // namespace conflab
