#pragma once

#include <optional>
#include <vector>

#include "conflab/liealg.hpp"
#include "conflab/matrix.hpp"

namespace conflab {

/// Coordinates used throughout (N = n + 2, indices 0-based):
///   E(Z) for a row vector Z in R^n is the g_1 element with first row
///   (0, Z, 0) and last column (0, -J Z^T, 0), where J is the form
///   2 y_1 y_n + y_2^2 + ... on the middle block. Its components are
///   Z_alpha = Z[0], Z_{alpha+beta} = Z[1..n-2], Z_{alpha+2beta} = Z[n-1].
///   exp(E(Z)) = [[1, Z, -Z J Z^T / 2], [0, I, -J Z^T], [0, 0, 1]].
///   A G_0 element is diag(x, M, 1/x) with M in O(J).
///
/// Through the chart y -> [-y^T J y / 2 : y : 1] of the complement of the
/// light cone of [e_1], p = diag(x, M, 1/x) exp(E(Z)) acts on R^{1,n-1} by
/// the affine map y -> x M (y - J Z^T).
struct ParabolicElement {
  So2nForm form;
  ExactMatrix matrix;
  Rational x;
  /// n x n Lorentz block of the G_0 factor.
  ExactMatrix M;
  /// g_1 coordinates.
  Vec<Rational> Z;
  /// When M e_1 = x e_1 (the G_0 factor fixes X_{-alpha}), the further
  /// splitting M = diag(x, k, 1/x) exp(T_beta) restricted to the middle.
  std::optional<ExactMatrix> k;
  std::optional<Vec<Rational>> T_beta;

  int n() const { return form.n; }
  ExactMatrix g0() const;
  ExactMatrix exp_z1() const;
  Rational z_alpha() const { return Z.front(); }
  Vec<Rational> z_alpha_plus_beta() const { return Vec<Rational>(Z.begin() + 1, Z.end() - 1); }
  Rational z_alpha_plus_2beta() const { return Z.back(); }
};

/// Middle-block form matrix J (n x n).
ExactMatrix middle_form(int n);
/// E(Z) as an (n+2) x (n+2) matrix.
ExactMatrix g1_element(const Vec<Rational>& z, int n);
ExactMatrix exp_g1(const Vec<Rational>& z, int n);
/// T_beta element with coordinates t (length n-2) at positions (1, 2..n-1).
ExactMatrix g_beta_element(const Vec<Rational>& t, int n);
ExactMatrix exp_g_beta(const Vec<Rational>& t, int n);
/// diag(x, M, 1/x).
ExactMatrix g0_element(const Rational& x, const ExactMatrix& M);

/// Error(Membership) if p does not preserve the form, Error(NotInParabolic)
/// if it moves the line through e_1.
ParabolicElement decompose_P(const ExactMatrix& p, int n);

struct JordanTriple {
  bool exact = false;
  /// Exact factors (valid when exact).
  ExactMatrix h, u, e;
  /// Floating factors (always filled).
  RealMatrix h_real, u_real, e_real;
  /// max |factor products and commutators - expected|, 0 on the exact path.
  double residual = 0;
};

/// Multiplicative Jordan decomposition p = p_h p_u p_e. The exact path needs
/// the semisimple part's eigenvalues to split over Q into rational roots and
/// conjugate pairs with rational modulus; otherwise a floating computation
/// is used and Error(Precision) is raised if its residual exceeds 1e-9.
JordanTriple jordan_in_P(const ParabolicElement& p);

struct HyperbolicNormalization {
  ExactMatrix p_beta;
  ExactMatrix p_1;
  Vec<Rational> T0;  ///< g_beta coordinates of log p_beta
  Vec<Rational> Z1;  ///< g_1 coordinates of log p_1
  /// p_1 p_beta p_h p_beta^{-1} p_1^{-1}
  ExactMatrix result;
};

/// Requires x = 1/lambda, k = I and lambda in (0, 1) (Error(Precondition)).
/// Error(Inconsistency) when the alpha coordinate of Ad(p_beta) Z_1^h is
/// nonzero, since then p_h cannot be semisimple.
HyperbolicNormalization normalize_hyperbolic(const ParabolicElement& p_h, const Rational& lambda);

/// diag(1/lambda, 1/lambda, I, lambda, lambda).
ExactMatrix hyperbolic_diagonal(const Rational& lambda, int n);

struct AffineAction {
  ExactMatrix linear;       ///< x M
  Vec<Rational> translation;  ///< -x M J Z^T
};
AffineAction affine_action(const ParabolicElement& p);

/// True iff the affine action on R^{1,n-1} has a fixed point.
bool is_linearizable(const ParabolicElement& p);
/// A fixed point when one exists.
std::optional<Vec<Rational>> affine_fixed_point(const ParabolicElement& p);

struct DerivativeNormalForm {
  /// Matrix of Ad(p) on g_{-1} = x^{-1} M, in the basis where the induced
  /// form is 2 y_1 y_n + y_2^2 + ... + y_{n-1}^2.
  ExactMatrix matrix;
  /// 1/x, the contraction factor on the g_{-alpha-beta} block.
  Rational lambda;
};

/// Error(NormalFormUnavailable) when the unipotent Jordan factor is not
/// trivial, Error(Precondition) when p is not linearizable.
DerivativeNormalForm derivative_normal_form(const ParabolicElement& p);

/// X_{-alpha}, its Cartan-involution image, and A_alpha (B(A_alpha, H) = alpha(H)).
ExactMatrix x_minus_alpha(int n);
ExactMatrix a_alpha(int n);

struct UnipotentObstruction {
  /// Ad(exp(mu theta X_{-alpha})) X_{-alpha} - X_{-alpha}, with its g_1 part removed.
  ExactMatrix residual;
  /// residual = coefficient * A_alpha (exact).
  std::optional<Rational> coefficient;
  /// B_theta(X_{-alpha}, X_{-alpha}) = -B(theta X_{-alpha}, X_{-alpha}).
  Rational b_theta;
};

UnipotentObstruction unipotent_obstruction(const Rational& mu, int n);

}  // namespace conflab
