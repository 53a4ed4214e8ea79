#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "conflab/matrix.hpp"

namespace conflab {

/// Commutator AB - BA (exact).
ExactMatrix bracket(const ExactMatrix& a, const ExactMatrix& b);

/// The quadratic form 2x1x_{n+2} + 2x2x_{n+1} + x3^2 + ... + xn^2 on R^{n+2}.
/// S is the permutation matrix of the involution 1<->n+2, 2<->n+1, so S^2 = I.
struct So2nForm {
  int n = 0;
  ExactMatrix S;

  static So2nForm make(int n);
  std::size_t size() const { return static_cast<std::size_t>(n + 2); }
  /// 0-based partner index under the pairing of coordinates.
  std::size_t partner(std::size_t i) const;
  Rational eval(const Vec<Rational>& x, const Vec<Rational>& y) const { return bilinear(S, x, y); }
};

/// Labels of the restricted root decomposition with respect to the Cartan
/// subspace diag(a, b, 0, ..., 0, -b, -a).
enum class RootLabel {
  A,
  M,
  Alpha,
  Beta,
  AlphaPlusBeta,
  AlphaPlus2Beta,
  NegAlpha,
  NegBeta,
  NegAlphaPlusBeta,
  NegAlphaPlus2Beta,
};

/// All labels in the documented basis order.
const std::vector<RootLabel>& all_root_labels();
std::string to_string(RootLabel label);

/// Integer coordinates (c_alpha, c_beta) of a root; a and m have (0, 0).
struct RootWeight {
  int alpha = 0;
  int beta = 0;
  bool operator==(const RootWeight&) const = default;
};

RootWeight weight_of(RootLabel label);
/// Root-space labels carrying a given weight: {A, M} for zero, one label for
/// a root, empty when the weight is not a root.
std::vector<RootLabel> labels_with_weight(RootWeight w);
/// Grading degree: +1 on g_alpha, g_{alpha+beta}, g_{alpha+2beta}; 0 on
/// a, m, +-beta; -1 on the negatives.
int grading_degree(RootLabel label);

struct BasisElement {
  RootLabel label;
  ExactMatrix matrix;
  /// 0-based (row, col) position whose entry equals this element's
  /// coefficient in any member matrix.
  std::size_t row = 0;
  std::size_t col = 0;
};

/// Basis of so(2,n): a, then m, then alpha, beta, alpha+beta, alpha+2beta,
/// then the negatives in the same order (each the transpose of its positive).
std::vector<BasisElement> so2n_basis(int n);

/// Dimension formula (n+2)(n+1)/2.
std::size_t so2n_dimension(int n);

bool is_member(const ExactMatrix& m, const So2nForm& form);

/// theta(M) = -M^T.
ExactMatrix cartan_involution(const ExactMatrix& m);

struct CartanElement {
  Rational a;
  Rational b;
  ExactMatrix matrix(int n) const;
};

/// lambda(a, b) for a root label (alpha(a,b) = a - b, beta(a,b) = b).
Rational root_value(RootLabel label, const CartanElement& h);

/// Linear coordinates with respect to an arbitrary linearly independent
/// family of square matrices.
class CoordinateMap {
 public:
  explicit CoordinateMap(std::vector<ExactMatrix> basis);
  std::size_t dimension() const { return basis_.size(); }
  const std::vector<ExactMatrix>& basis() const { return basis_; }
  /// Coordinates of m, or nullopt if m is outside the span.
  std::optional<Vec<Rational>> coordinates(const ExactMatrix& m) const;
  ExactMatrix combine(const Vec<Rational>& coords) const;

 private:
  std::vector<ExactMatrix> basis_;
  std::vector<std::size_t> pivot_entries_;
  ExactMatrix pivot_inverse_;
};

/// Matrix of ad(A) in the given basis (columns are coordinates of [A, e_j]).
ExactMatrix adjoint_matrix(const CoordinateMap& coords, const ExactMatrix& a);

/// trace(ad A o ad B) over the supplied basis.
Rational killing_form(const std::vector<ExactMatrix>& basis, const ExactMatrix& a, const ExactMatrix& b);
Rational killing_form(const CoordinateMap& coords, const ExactMatrix& a, const ExactMatrix& b);

struct GradedElement {
  So2nForm ambient;
  ExactMatrix total;
  std::map<RootLabel, ExactMatrix> components;

  /// Component for a label (zero matrix when absent).
  ExactMatrix component(RootLabel label) const;
  /// Labels with a nonzero component.
  std::vector<RootLabel> support() const;
};

GradedElement root_decompose(const ExactMatrix& m, int n);

struct Sl2Triple {
  ExactMatrix X;
  ExactMatrix Y;
  ExactMatrix Z;
};

struct TripleCheck {
  bool ok = false;
  ExactMatrix residual_xy;  ///< [X,Y] - Y
  ExactMatrix residual_xz;  ///< [X,Z] + Z
  ExactMatrix residual_yz;  ///< [Y,Z] - X
};

TripleCheck verify_sl2_triple(const ExactMatrix& x, const ExactMatrix& y, const ExactMatrix& z);
inline TripleCheck verify_sl2_triple(const Sl2Triple& t) { return verify_sl2_triple(t.X, t.Y, t.Z); }

/// (diag(1/2, -1/2), e, f/2) in gl(2).
Sl2Triple standard_sl2_triple();

}  // namespace conflab
