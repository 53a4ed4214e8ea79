#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace conflab {

using Rational = mpq_class;

/// Parses "p/q", an integer, or a decimal literal with optional exponent
/// ("1.25", "-3e-2") into an exact rational. Throws Error(Domain) on junk.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

/// Exact square root when numerator and denominator are perfect squares.
std::optional<Rational> exact_sqrt(const Rational& q);

/// Best rational approximation with denominator at most max_den
/// (continued-fraction convergents). Used to lift float eigenvalues to
/// exact candidates that are then verified exactly.
Rational rational_approximation(double x, std::int64_t max_den = 1000000);

/// Scalar traits used by the generic linear algebra in matrix.hpp.
template <class T>
struct Field;

template <>
struct Field<Rational> {
  static constexpr bool exact = true;
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static double magnitude(const Rational& x) { return std::abs(x.get_d()); }
  static Rational from_rational(const Rational& x) { return x; }
  /// Throws Error(InexactSqrt) when the root is irrational.
  static Rational sqrt(const Rational& x);
};

template <>
struct Field<double> {
  static constexpr bool exact = false;
  static constexpr double tolerance = 1e-10;
  static bool is_zero(double x) { return std::abs(x) <= tolerance; }
  static double magnitude(double x) { return std::abs(x); }
  static double from_rational(const Rational& x) { return x.get_d(); }
  static double sqrt(double x) { return std::sqrt(x); }
};

}  // namespace conflab
