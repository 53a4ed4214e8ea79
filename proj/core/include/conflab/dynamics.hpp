#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "conflab/expr.hpp"
#include "conflab/matrix.hpp"
#include "conflab/metric.hpp"

namespace conflab {

using Point = std::vector<double>;

/// How a matrix A becomes a vector field: Matrix uses x -> A x (flow e^{tA}),
/// Paper uses x -> -A x (flow e^{-tA}), the convention under which the field
/// of a matrix is d/dt|_0 e^{-tA} x.
enum class FieldConvention { Matrix, Paper };

/// Fundamental annulus bookkeeping for the quotient by <lambda id>: points
/// are rescaled by powers of lambda into 1 <= |x| < lambda (Euclidean norm).
struct DeckNormalizer {
  double lambda = 2;
  /// Rescales x in place and returns the factor applied (1 when none).
  double normalize(Point& x) const;
};

class FlowSpec {
 public:
  static FlowSpec linear(const ExactMatrix& a, FieldConvention convention = FieldConvention::Matrix);
  static FlowSpec chart(std::vector<Expr> field);
  FlowSpec with_normalizer(double lambda) const;
  /// Same flow run backwards in time.
  FlowSpec reversed() const;

  int dim() const { return dim_; }
  bool is_linear() const { return linear_; }
  /// Effective generator A of x' = A x (linear flows only).
  const Eigen::MatrixXd& generator() const { return a_; }
  const std::optional<DeckNormalizer>& normalizer() const { return normalizer_; }

  Point field(const Point& x) const;
  Eigen::MatrixXd field_jacobian(const Point& x) const;

 private:
  int dim_ = 0;
  bool linear_ = false;
  Eigen::MatrixXd a_;
  std::vector<Expr> field_;
  std::vector<std::vector<Expr>> jac_;  // jac_[i][j] = d_j field_i
  double sign_ = 1;
  std::optional<DeckNormalizer> normalizer_;
};

struct FlowResult {
  Point x;
  /// Derivative of the time-t map, including deck rescalings.
  Eigen::MatrixXd jacobian;
  /// Product of the deck factors applied along the way.
  double deck_factor = 1;
};

/// Integrates for time t (either sign). Linear flows use the matrix
/// exponential; chart fields use RK4 with the step halved until doubling it
/// moves the endpoint by less than 1e-8. Throws EscapeError when the
/// trajectory reaches the origin, blows up or leaves the field's domain.
FlowResult advance(const FlowSpec& flow, const Point& x0, double t);
Point integrate(const FlowSpec& flow, const Point& x0, double t);

struct CocycleSample {
  Point x;
  double t = 0;
  double lambda = 0;
  /// max |(phi^t)^* g - lambda g| / max |lambda g| at x.
  double residual = 0;
};

/// Distortion of a linear map D sending x to y: D^T g_y D = lambda g_x.
CocycleSample map_distortion(const MetricSpec& g, const Point& x, const Point& y, const Eigen::MatrixXd& d,
                             double tolerance = 1e-8);

/// Distortion of the flow map phi^t at x. Deck rescalings are not applied:
/// the cocycle is that of the chart flow. Throws Error(Conformality) when the
/// pulled-back metric is not proportional to g within tolerance.
CocycleSample conformal_distortion(const FlowSpec& flow, const MetricSpec& g, const Point& x, double t,
                                   double tolerance = 1e-8);

struct LyapunovSpectrum {
  /// Estimates in decreasing order, one per chart dimension.
  std::vector<double> exponents;
  /// Distinct values (clustered within 1e-2) and their multiplicities.
  std::vector<double> distinct;
  std::vector<int> multiplicities;
  double T = 0;
  std::size_t steps = 0;
  /// |estimate at the end - estimate at 90% of the run| per exponent.
  std::vector<double> drift;
  bool converged = false;
  /// Growth rate of the flow direction itself.
  double flow_direction_exponent = 0;
};

/// QR-reorthonormalized spectrum along the forward orbit of x0. Deck
/// factors are folded into the propagated frame.
LyapunovSpectrum lyapunov_spectrum(const FlowSpec& flow, const Point& x0, double T, double dt);

struct Transversal {
  Point point;
  Point normal;
};

struct PeriodicOrbit {
  Point point;
  double period = 0;
  int iterations = 0;
  /// Derivative of the period map (deck factors included).
  Eigen::MatrixXd monodromy;
  /// Distance between x and the normalized image of x after one period.
  double closure_residual = 0;
  /// |M f - f| / |f| for the flow direction f at the point.
  double flow_direction_residual = 0;
};

struct PeriodicOptions {
  double scan_step = 1e-2;
  double max_return_time = 50;
  int max_iterations = 200;
  double tolerance = 1e-12;
};

/// Plane through the seed orthogonal to the field there.
Transversal default_transversal(const FlowSpec& flow, const Point& seed);

/// Fixed point of the first-return map to the transversal, found by plain
/// iteration x <- P(x). Throws Error(NoReturn) when the orbit does not come
/// back within max_return_time and Error(Divergence) when the iteration
/// does not settle.
PeriodicOrbit find_periodic(const FlowSpec& flow, const Point& seed, const Transversal& transversal,
                            const PeriodicOptions& options = {});

struct ReturnHit {
  Point point;
  double time = 0;
};

/// One application of the first-return map.
ReturnHit first_return(const FlowSpec& flow, const Point& x, const Transversal& transversal,
                       const PeriodicOptions& options = {});

}  // namespace conflab
