#include "conflab/sampling.hpp"

#include "conflab/errors.hpp"

namespace conflab {

int Sampler::uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

double Sampler::uniform_real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

Rational Sampler::rational(int max_num, int max_den) {
  Rational r(uniform_int(-max_num, max_num), uniform_int(1, max_den));
  r.canonicalize();
  return r;
}

Rational Sampler::nonzero_rational(int max_num, int max_den) {
  while (true) {
    Rational r = rational(max_num, max_den);
    if (sgn(r) != 0) return r;
  }
}

Vec<Rational> Sampler::rational_vector(std::size_t n, int max_num, int max_den) {
  Vec<Rational> v(n);
  for (auto& x : v) x = rational(max_num, max_den);
  return v;
}

ExactMatrix Sampler::rational_matrix(std::size_t rows, std::size_t cols, int max_num, int max_den) {
  ExactMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rational(max_num, max_den);
  return m;
}

ExactMatrix Sampler::so2n_member(int n, int max_num, int max_den) {
  const auto basis = so2n_basis(n);
  ExactMatrix m(basis.front().matrix.rows(), basis.front().matrix.cols());
  for (const auto& e : basis) m += e.matrix * rational(max_num, max_den);
  return m;
}

namespace {

bool in_g0(RootLabel l) {
  return l == RootLabel::A || l == RootLabel::M || l == RootLabel::Beta || l == RootLabel::NegBeta;
}

ExactMatrix cartan_diagonal(std::size_t N, const Rational& a, const Rational& b) {
  ExactMatrix d = ExactMatrix::identity(N);
  d(0, 0) = a;
  d(N - 1, N - 1) = Rational(1) / a;
  d(1, 1) = b;
  d(N - 2, N - 2) = Rational(1) / b;
  return d;
}

}  // namespace

ExactMatrix exp_nilpotent_matrix(const ExactMatrix& z) {
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

ExactMatrix cayley(const ExactMatrix& a) {
  const ExactMatrix id = ExactMatrix::identity(a.rows());
  return inverse(id - a) * (id + a);
}

ExactMatrix Sampler::orthogonal_element(int n, int factors) {
  const auto basis = so2n_basis(n);
  const std::size_t N = static_cast<std::size_t>(n + 2);
  ExactMatrix g = ExactMatrix::identity(N);
  for (int f = 0; f < factors; ++f) {
    switch (uniform_int(0, 2)) {
      case 0: {
        const auto& e = basis[static_cast<std::size_t>(uniform_int(0, static_cast<int>(basis.size()) - 1))];
        if (e.label == RootLabel::A || e.label == RootLabel::M) {
          g = g * cayley(e.matrix * (Rational(uniform_int(-2, 2)) / 3));
        } else {
          g = g * exp_nilpotent_matrix(e.matrix * rational());
        }
        break;
      }
      case 1:
        g = g * cartan_diagonal(N, nonzero_rational(3, 2), nonzero_rational(3, 2));
        break;
      default: {
        ExactMatrix m(N, N);
        for (const auto& e : basis)
          if (e.label == RootLabel::M) m += e.matrix * rational(2, 3);
        g = g * cayley(m);
        break;
      }
    }
  }
  return g;
}

ExactMatrix Sampler::parabolic_element(int n, int factors) {
  const auto basis = so2n_basis(n);
  const std::size_t N = static_cast<std::size_t>(n + 2);
  ExactMatrix g = cartan_diagonal(N, nonzero_rational(3, 2), nonzero_rational(3, 2));
  for (int f = 0; f < factors; ++f) {
    const auto& e = basis[static_cast<std::size_t>(uniform_int(0, static_cast<int>(basis.size()) - 1))];
    if (e.label == RootLabel::A || e.label == RootLabel::M) {
      g = g * cayley(e.matrix * (Rational(uniform_int(-2, 2)) / 3));
    } else if (in_g0(e.label) || weight_of(e.label).alpha > 0) {
      g = g * exp_nilpotent_matrix(e.matrix * rational());
    }
  }
  return g;
}

}  // namespace conflab
