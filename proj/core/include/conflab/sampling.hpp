#pragma once

#include <cstdint>
#include <random>

#include "conflab/liealg.hpp"
#include "conflab/matrix.hpp"

namespace conflab {

/// Deterministic generator of exact test data. Every draw is a function of
/// the seed and the sequence of calls.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  int uniform_int(int lo, int hi);
  /// p/q with |p| <= max_num and 1 <= q <= max_den.
  Rational rational(int max_num = 5, int max_den = 4);
  Rational nonzero_rational(int max_num = 5, int max_den = 4);
  Vec<Rational> rational_vector(std::size_t n, int max_num = 5, int max_den = 4);
  ExactMatrix rational_matrix(std::size_t rows, std::size_t cols, int max_num = 5, int max_den = 4);
  double uniform_real(double lo, double hi);

  /// Random element of so(2,n) as a rational combination of basis elements.
  ExactMatrix so2n_member(int n, int max_num = 3, int max_den = 2);
  /// Product of exponentials of root vectors, rational Cartan diagonals and
  /// Cayley transforms of compact elements: an element of O(2,n).
  ExactMatrix orthogonal_element(int n, int factors = 4);
  /// Element of the parabolic subgroup stabilizing the line through e_1.
  ExactMatrix parabolic_element(int n, int factors = 3);

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// exp of a nilpotent matrix (exact, finite series).
ExactMatrix exp_nilpotent_matrix(const ExactMatrix& z);
/// (I - A)^{-1} (I + A); orthogonal for the form whenever A is in its Lie algebra.
ExactMatrix cayley(const ExactMatrix& a);

}  // namespace conflab
