#pragma once

#include <complex>
#include <vector>

#include "conflab/liealg.hpp"
#include "conflab/matrix.hpp"

namespace conflab {

/// Real form of su(1,k): trace-free complex (k+1) x (k+1) matrices A with
/// A^* H + H A = 0 for the Hermitian form H = 2 Re(z_0 conj(z_k)) + |z_1|^2
/// + ... + |z_{k-1}|^2, realified entrywise by a + ib -> [[a, -b], [b, a]]
/// on the real coordinates (x_0, y_0, x_1, y_1, ...).
struct RealifiedAlgebra {
  int k = 0;
  std::vector<ExactMatrix> basis;
  /// Realified H (symmetric, size 2(k+1)).
  ExactMatrix form;
  /// Realified multiplication by i.
  ExactMatrix J;
  /// Realified diag(1, 0, ..., 0, -1), spanning the split Cartan subspace.
  ExactMatrix cartan;
  /// Restricted root spaces for ad(cartan) with eigenvalues 1 and 2.
  std::vector<ExactMatrix> h_lambda;
  std::vector<ExactMatrix> h_2lambda;
  std::size_t dimension() const { return basis.size(); }
};

RealifiedAlgebra su1k_basis(int k);

/// Error(Inconsistency) if some bracket leaves the span (exact test).
void verify_bracket_closure(const RealifiedAlgebra& h);

struct Embedding {
  int k = 0;
  int n = 0;
  RealifiedAlgebra source;
  /// (n+2) x 2(k+1) coordinate inclusion: x_0 -> e_1, y_0 -> e_2, the
  /// middle pairs next, padding, then y_k -> e_{n+1}, x_k -> e_{n+2}.
  ExactMatrix inclusion;
  /// Images of source.basis, in so(2,n).
  std::vector<ExactMatrix> images;

  ExactMatrix apply(const ExactMatrix& xi) const;
};

/// Error(Domain) unless k >= 2 and n >= 2k.
Embedding standard_embedding(int k, int n);

/// Ad(q) o f for q in O(2,n).
Embedding conjugate_embedding(const Embedding& f, const ExactMatrix& q);

/// max over basis pairs of f([a,b]) - [f(a), f(b)] being nonzero: the
/// number of pairs with a nonzero residual (0 for a homomorphism).
std::size_t homomorphism_failures(const Embedding& f);

/// f(theta_h xi) == theta_g f(xi) on the basis, with theta(M) = -M^T.
bool cartan_compatible(const Embedding& f);

struct CentralizerBasis {
  int n = 0;
  std::vector<ExactMatrix> basis;
};

/// Exact nullspace of {Y in so(2,n) : [Y, f(xi)] = 0 for all basis xi}.
CentralizerBasis centralizer_algebra(const std::vector<ExactMatrix>& images, int n);

/// 1 + (n-2k)(n-2k-1)/2: the complex structure plus so(n-2k) on the padding.
std::size_t expected_centralizer_dimension(int k, int n);

struct EllipticityVerdict {
  std::vector<std::complex<double>> eigenvalues;
  double max_abs_real_part = 0;
  bool semisimple = false;
  bool elliptic = false;
};

EllipticityVerdict ellipticity(const ExactMatrix& y, double tolerance = 1e-9);

struct EllipticityReport {
  std::vector<EllipticityVerdict> verdicts;
  bool all_elliptic = false;
};

EllipticityReport ellipticity_report(const CentralizerBasis& cb, double tolerance = 1e-9);

struct BlockForm {
  bool block_diagonal = false;
  ExactMatrix g0;  ///< 2 x 2
  ExactMatrix G0;  ///< (n-2) x (n-2)
  ExactMatrix g1;  ///< 2 x 2
  bool g0_special = false;      ///< det g0 = 1
  bool G0_orthogonal = false;   ///< G0^T G0 = I
  bool g1_relation = false;     ///< g1 = V (g0^T)^{-1} V, forced by g^T S g = S
  bool g0_elliptic = false;     ///< |tr g0| < 2 or g0 = +-I
};

/// Reads g in the (2, n-2, 2) block split of the form coordinates.
BlockForm block_structure(const ExactMatrix& g, int n);

struct UvCheck {
  bool shape_ok = false;
  Vec<Rational> u, v;
  bool equal_norms = false;
  bool orthogonal = false;
  bool independent = false;
  bool ok() const { return shape_ok && equal_norms && orthogonal && independent; }
};

/// Error(Shape) unless X has the block form [[0, U, 0], [0, 0, *], [0, 0, 0]]
/// of a g_beta + g_{alpha+beta} element.
UvCheck appendix_uv_check(const ExactMatrix& x, int n);

}  // namespace conflab
