#pragma once

#include <string>
#include <vector>

#include "conflab/dynamics.hpp"
#include "conflab/liealg.hpp"
#include "conflab/metric.hpp"

namespace conflab {

/// Quotient of R^{1,2} minus the origin by x -> lambda x. The chart carries
/// the form q(x) = 2 x1 x3 + x2^2.
struct HopfModel {
  Rational lambda;

  /// Error(Domain) unless lambda > 1.
  static HopfModel make(const Rational& lambda);

  /// Matrix of q.
  static ExactMatrix form();
  /// Flat chart metric (the builtin hopf3).
  static MetricSpec metric();
  /// g / g(Z, Z) with Z the opposite-unipotent field, which is g / x1^2.
  static MetricSpec renormalized_metric();

  FlowSpec flow(const ExactMatrix& generator, FieldConvention convention = FieldConvention::Matrix) const;
};

/// Matrices X (hyperbolic), Y (unipotent) and Z (opposite unipotent) of
/// so(1,2) for q. As matrices they satisfy the triple relations directly.
/// The vector fields x -> -A x (FieldConvention::Paper) satisfy them as
/// well, because the map A -> (x -> -A x) is a Lie algebra homomorphism
/// into vector fields with the bracket [U, V] = DV.U - DU.V.
struct So12Fields {
  Sl2Triple matrices;
  FieldConvention convention = FieldConvention::Paper;

  /// Components of the field of A on the chart of the given metric.
  std::vector<Expr> field_exprs(const ExactMatrix& a, const MetricSpec& chart) const;
  Vec<Rational> field_at(const ExactMatrix& a, const Vec<Rational>& x) const;
};

So12Fields so12_triple_fields(const HopfModel& model);

/// Bracket of the linear fields U(x) = u x and V(x) = v x, returned as the
/// matrix of the (linear) result.
ExactMatrix linear_field_bracket(const ExactMatrix& u, const ExactMatrix& v);

struct ConicalOrbitData {
  Vec<Rational> v;
  /// Isotropic partner with q(u, v) = 1 used to build f.
  Vec<Rational> u;
  /// Spacelike direction orthogonal to u and v.
  Vec<Rational> w;
  ExactMatrix f;
  ExactMatrix U_gen;
};

/// The vector v must be nonzero, isotropic and future pointing, which here
/// means v1 - v3 > 0 (q(v, e1 - e3) < 0).
ConicalOrbitData conical_stabilizer(const HopfModel& model, const Vec<Rational>& v);

bool on_nullcone(const Vec<Rational>& x);
bool on_nullcone(const Point& x, double tolerance = 1e-12);

struct OrbitForm {
  Point basepoint;
  /// Coefficient vectors (in the field basis) spanning the stabilizer h_x.
  std::vector<Point> stabilizer;
  /// Indices of the fields whose classes form the basis of h/h_x.
  std::vector<int> quotient_basis;
  /// Gram matrix of q_x in that basis.
  Eigen::MatrixXd gram;
  /// Sign counts of the Gram matrix with tolerance 1e-10.
  int positive = 0;
  int negative = 0;
  int null = 0;
  bool degenerate_orbit() const { return quotient_basis.empty(); }
};

/// Fields are given as their values at x via linear generators (matrix
/// convention does not matter for q_x). tolerance applies to the rank test.
OrbitForm orbit_form(const std::vector<ExactMatrix>& generators, const MetricSpec& metric, const Point& x,
                     double tolerance = 1e-10);

/// A point of the Einstein universe: a nonzero isotropic representative.
class EinPoint {
 public:
  EinPoint(So2nForm form, Vec<Rational> representative);
  const Vec<Rational>& representative() const { return x_; }
  const So2nForm& form() const { return form_; }
  /// Projective equality.
  bool operator==(const EinPoint& o) const;

 private:
  So2nForm form_;
  Vec<Rational> x_;
};

/// Error(Membership) when g^T S g != S.
EinPoint ein_act(const ExactMatrix& g, const EinPoint& p);

/// g^T S g - S for g acting on R^{n+2}.
ExactMatrix orthogonality_residual(const ExactMatrix& g, const So2nForm& form);

}  // namespace conflab
