#include "conflab/centralizer.hpp"

#include <Eigen/Eigenvalues>

#include "conflab/errors.hpp"
#include "conflab/polynomial.hpp"

namespace conflab {

namespace {

std::size_t sz(int v) { return static_cast<std::size_t>(v); }

// Realified E_{pq} (real part) or i E_{pq} (imaginary part).
ExactMatrix realified_unit(std::size_t dim, std::size_t p, std::size_t q, bool imaginary) {
  ExactMatrix m(2 * dim, 2 * dim);
  if (!imaginary) {
    m(2 * p, 2 * q) = 1;
    m(2 * p + 1, 2 * q + 1) = 1;
  } else {
    m(2 * p, 2 * q + 1) = -1;
    m(2 * p + 1, 2 * q) = 1;
  }
  return m;
}

ExactMatrix combine(const std::vector<ExactMatrix>& basis, const Vec<Rational>& c) {
  ExactMatrix m(basis.front().rows(), basis.front().cols());
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (sgn(c[i]) != 0) m += basis[i] * c[i];
  return m;
}

}  // namespace

RealifiedAlgebra su1k_basis(int k) {
  if (k < 2) throw Error(ErrorKind::Domain, "su(1,k) needs k >= 2, got " + std::to_string(k));
  const std::size_t d = sz(k + 1);
  RealifiedAlgebra h;
  h.k = k;

  h.form = ExactMatrix(2 * d, 2 * d);
  for (std::size_t r = 0; r < 2; ++r) {
    h.form(r, 2 * (d - 1) + r) = 1;
    h.form(2 * (d - 1) + r, r) = 1;
  }
  for (std::size_t p = 1; p + 1 < d; ++p) h.form(2 * p, 2 * p) = h.form(2 * p + 1, 2 * p + 1) = 1;
  h.J = ExactMatrix(2 * d, 2 * d);
  for (std::size_t p = 0; p < d; ++p) h.J += realified_unit(d, p, p, true);

  std::vector<ExactMatrix> units;
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = 0; q < d; ++q)
      for (bool im : {false, true}) units.push_back(realified_unit(d, p, q, im));

  // Linear constraints on the real coefficients of the units.
  std::vector<ExactMatrix> constraint_images;
  for (const auto& u : units) {
    ExactMatrix c = u.transpose() * h.form + h.form * u;
    Rational tr = 0, trj = 0;
    const ExactMatrix uj = u * h.J;
    for (std::size_t i = 0; i < u.rows(); ++i) {
      tr += u(i, i);
      trj += uj(i, i);
    }
    ExactMatrix col(c.rows() * c.cols() + 2, 1);
    for (std::size_t i = 0; i < c.rows(); ++i)
      for (std::size_t j = 0; j < c.cols(); ++j) col(i * c.cols() + j, 0) = c(i, j);
    col(c.rows() * c.cols(), 0) = tr;
    col(c.rows() * c.cols() + 1, 0) = trj;
    constraint_images.push_back(col);
  }
  ExactMatrix system = hstack(constraint_images);
  ExactMatrix ns = nullspace(system);
  std::vector<ExactMatrix> raw;
  for (std::size_t c = 0; c < ns.cols(); ++c) raw.push_back(combine(units, ns.col(c)));
  if (raw.size() != sz(k * (k + 2)))
    throw Error(ErrorKind::Inconsistency, "su(1,k) has unexpected dimension " + std::to_string(raw.size()));

  h.cartan = ExactMatrix(2 * d, 2 * d);
  h.cartan += realified_unit(d, 0, 0, false);
  h.cartan -= realified_unit(d, d - 1, d - 1, false);

  // Rebuild the basis from ad(cartan) eigenspaces.
  CoordinateMap coords(raw);
  const ExactMatrix ad = adjoint_matrix(coords, h.cartan);
  for (int c : {0, 1, -1, 2, -2}) {
    ExactMatrix shifted = ad - ExactMatrix::identity(ad.rows()) * Rational(c);
    ExactMatrix es = nullspace(shifted);
    for (std::size_t j = 0; j < es.cols(); ++j) {
      ExactMatrix m = coords.combine(es.col(j));
      h.basis.push_back(m);
      if (c == 1) h.h_lambda.push_back(m);
      if (c == 2) h.h_2lambda.push_back(m);
    }
  }
  if (h.basis.size() != raw.size()) throw Error(ErrorKind::Inconsistency, "ad(cartan) is not diagonalizable over Q");
  return h;
}

void verify_bracket_closure(const RealifiedAlgebra& h) {
  CoordinateMap coords(h.basis);
  for (std::size_t i = 0; i < h.basis.size(); ++i)
    for (std::size_t j = i + 1; j < h.basis.size(); ++j)
      if (!coords.coordinates(bracket(h.basis[i], h.basis[j])))
        throw Error(ErrorKind::Inconsistency, "bracket of basis elements leaves su(1,k)");
}

ExactMatrix Embedding::apply(const ExactMatrix& xi) const { return inclusion * xi * inclusion.transpose(); }

Embedding standard_embedding(int k, int n) {
  if (k < 2) throw Error(ErrorKind::Domain, "embedding needs k >= 2");
  if (n < 2 * k) throw Error(ErrorKind::Domain, "standard embedding needs n >= 2k");
  Embedding f;
  f.k = k;
  f.n = n;
  f.source = su1k_basis(k);
  const std::size_t N = sz(n + 2), R = sz(2 * (k + 1));
  f.inclusion = ExactMatrix(N, R);
  f.inclusion(0, 0) = 1;
  f.inclusion(1, 1) = 1;
  for (std::size_t r = 2; r + 2 < R; ++r) f.inclusion(r, r) = 1;
  f.inclusion(N - 2, R - 1) = 1;  // y_k
  f.inclusion(N - 1, R - 2) = 1;  // x_k
  for (const auto& b : f.source.basis) f.images.push_back(f.apply(b));
  So2nForm form = So2nForm::make(n);
  for (const auto& m : f.images)
    if (!is_member(m, form)) throw Error(ErrorKind::Inconsistency, "embedded element is not in so(2,n)");
  return f;
}

Embedding conjugate_embedding(const Embedding& f, const ExactMatrix& q) {
  So2nForm form = So2nForm::make(f.n);
  if (!(q.transpose() * form.S * q - form.S).is_zero())
    throw Error(ErrorKind::Membership, "conjugating matrix is not in O(2,n)");
  Embedding g = f;
  g.inclusion = q * f.inclusion;
  const ExactMatrix qi = inverse(q);
  for (auto& m : g.images) m = q * m * qi;
  return g;
}

std::size_t homomorphism_failures(const Embedding& f) {
  // The inclusion is only an isometry for the standard embedding, so the
  // images are mapped through the coordinates of the source bracket.
  CoordinateMap coords(f.source.basis);
  std::size_t failures = 0;
  for (std::size_t i = 0; i < f.images.size(); ++i)
    for (std::size_t j = i + 1; j < f.images.size(); ++j) {
      auto c = coords.coordinates(bracket(f.source.basis[i], f.source.basis[j]));
      if (!c || combine(f.images, *c) != bracket(f.images[i], f.images[j])) ++failures;
    }
  return failures;
}

bool cartan_compatible(const Embedding& f) {
  CoordinateMap coords(f.source.basis);
  for (std::size_t i = 0; i < f.images.size(); ++i) {
    auto c = coords.coordinates(cartan_involution(f.source.basis[i]));
    if (!c || combine(f.images, *c) != cartan_involution(f.images[i])) return false;
  }
  return true;
}

CentralizerBasis centralizer_algebra(const std::vector<ExactMatrix>& images, int n) {
  const auto basis = so2n_basis(n);
  const std::size_t N = sz(n + 2);
  // Column c lists every entry of [B_c, f(xi)] over all images.
  ExactMatrix system(images.size() * N * N, basis.size());
  for (std::size_t c = 0; c < basis.size(); ++c)
    for (std::size_t m = 0; m < images.size(); ++m) {
      const ExactMatrix br = bracket(basis[c].matrix, images[m]);
      for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) system((m * N + i) * N + j, c) = br(i, j);
    }
  std::vector<ExactMatrix> bm;
  for (const auto& b : basis) bm.push_back(b.matrix);
  CentralizerBasis out;
  out.n = n;
  const ExactMatrix ns = nullspace(system);
  for (std::size_t c = 0; c < ns.cols(); ++c) out.basis.push_back(combine(bm, ns.col(c)));
  return out;
}

std::size_t expected_centralizer_dimension(int k, int n) {
  const int pad = n - 2 * k;
  return sz(1 + pad * (pad - 1) / 2);
}

EllipticityVerdict ellipticity(const ExactMatrix& y, double tolerance) {
  EllipticityVerdict v;
  const RealMatrix r = to_real(y);
  Eigen::MatrixXd e(static_cast<Eigen::Index>(r.rows()), static_cast<Eigen::Index>(r.cols()));
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j) e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = r(i, j);
  Eigen::EigenSolver<Eigen::MatrixXd> es(e, false);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    v.eigenvalues.push_back(es.eigenvalues()(i));
    v.max_abs_real_part = std::max(v.max_abs_real_part, std::abs(es.eigenvalues()(i).real()));
  }
  v.semisimple = is_squarefree(minimal_polynomial(y));
  v.elliptic = v.semisimple && v.max_abs_real_part <= tolerance;
  return v;
}

EllipticityReport ellipticity_report(const CentralizerBasis& cb, double tolerance) {
  EllipticityReport r;
  r.all_elliptic = true;
  for (const auto& y : cb.basis) {
    r.verdicts.push_back(ellipticity(y, tolerance));
    r.all_elliptic = r.all_elliptic && r.verdicts.back().elliptic;
  }
  return r;
}

BlockForm block_structure(const ExactMatrix& g, int n) {
  const std::size_t N = sz(n + 2);
  if (g.rows() != N || !g.is_square()) throw Error(ErrorKind::Dimension, "matrix size must be n+2");
  auto block_of = [&](std::size_t i) { return i < 2 ? 0 : (i + 2 < N ? 1 : 2); };
  BlockForm b;
  b.block_diagonal = true;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if (block_of(i) != block_of(j) && sgn(g(i, j)) != 0) b.block_diagonal = false;
  b.g0 = ExactMatrix(2, 2);
  b.g1 = ExactMatrix(2, 2);
  b.G0 = ExactMatrix(sz(n - 2), sz(n - 2));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      b.g0(i, j) = g(i, j);
      b.g1(i, j) = g(N - 2 + i, N - 2 + j);
    }
  for (std::size_t i = 0; i < sz(n - 2); ++i)
    for (std::size_t j = 0; j < sz(n - 2); ++j) b.G0(i, j) = g(i + 2, j + 2);
  const ExactMatrix V{{0, 1}, {1, 0}};
  b.g0_special = determinant(b.g0) == 1;
  b.G0_orthogonal = b.G0.transpose() * b.G0 == ExactMatrix::identity(sz(n - 2));
  b.g1_relation = sgn(determinant(b.g0)) != 0 && b.g1 == V * inverse(b.g0.transpose()) * V;
  const Rational tr = b.g0(0, 0) + b.g0(1, 1);
  const ExactMatrix id = ExactMatrix::identity(2);
  b.g0_elliptic = (tr * tr < 4 && b.g0_special) || b.g0 == id || b.g0 == -id;
  return b;
}

UvCheck appendix_uv_check(const ExactMatrix& x, int n) {
  const std::size_t N = sz(n + 2);
  if (x.rows() != N || !x.is_square()) throw Error(ErrorKind::Dimension, "matrix size must be n+2");
  if (!is_member(x, So2nForm::make(n))) throw Error(ErrorKind::Shape, "matrix is not in so(2,n)");
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      const bool upper_u = i < 2 && j >= 2 && j + 2 < N;
      const bool right = i >= 2 && i + 2 < N && j + 2 >= N;
      if (!upper_u && !right && sgn(x(i, j)) != 0)
        throw Error(ErrorKind::Shape, "matrix is not of the block form [[0, U, 0], [0, 0, -U^T], [0, 0, 0]]");
    }
  UvCheck c;
  c.shape_ok = true;
  for (std::size_t j = 2; j + 2 < N; ++j) {
    c.u.push_back(x(0, j));
    c.v.push_back(x(1, j));
  }
  c.equal_norms = dot(c.u, c.u) == dot(c.v, c.v);
  c.orthogonal = sgn(dot(c.u, c.v)) == 0;
  c.independent = rank(ExactMatrix::from_columns({c.u, c.v}, c.u.size())) == 2;
  return c;
}

}  // namespace conflab
