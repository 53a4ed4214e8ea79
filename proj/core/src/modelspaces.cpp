#include "conflab/modelspaces.hpp"

#include <Eigen/Eigenvalues>

#include "conflab/errors.hpp"

namespace conflab {

namespace {

Rational q3(const Vec<Rational>& x, const Vec<Rational>& y) { return bilinear(HopfModel::form(), x, y); }

void require_size3(const Vec<Rational>& v) {
  if (v.size() != 3) throw Error(ErrorKind::Dimension, "Hopf chart points have 3 coordinates");
}

}  // namespace

HopfModel HopfModel::make(const Rational& lambda) {
  if (lambda <= 1) throw Error(ErrorKind::Domain, "Hopf ratio must exceed 1, got " + to_string(lambda));
  return HopfModel{lambda};
}

ExactMatrix HopfModel::form() { return ExactMatrix{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}; }

MetricSpec HopfModel::metric() { return builtin_metric("hopf3"); }

MetricSpec HopfModel::renormalized_metric() {
  MetricSpec g = metric();
  return conformal_rescale(g, pow(g.coordinate(0), -2));
}

FlowSpec HopfModel::flow(const ExactMatrix& generator, FieldConvention convention) const {
  return FlowSpec::linear(generator, convention).with_normalizer(lambda.get_d());
}

std::vector<Expr> So12Fields::field_exprs(const ExactMatrix& a, const MetricSpec& chart) const {
  if (a.rows() != static_cast<std::size_t>(chart.dim()) || !a.is_square())
    throw Error(ErrorKind::Dimension, "generator size does not match the chart");
  const Rational sign = convention == FieldConvention::Paper ? -1 : 1;
  std::vector<Expr> out;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Expr e = Expr::num(0);
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (sgn(a(i, j)) != 0) e = e + Expr::num(Rational(sign * a(i, j))) * chart.coordinate(static_cast<int>(j));
    out.push_back(e);
  }
  return out;
}

Vec<Rational> So12Fields::field_at(const ExactMatrix& a, const Vec<Rational>& x) const {
  Vec<Rational> v = a.apply(x);
  if (convention == FieldConvention::Paper)
    for (auto& c : v) c = -c;
  return v;
}

So12Fields so12_triple_fields(const HopfModel&) {
  So12Fields f;
  f.matrices.X = ExactMatrix{{1, 0, 0}, {0, 0, 0}, {0, 0, -1}};
  f.matrices.Y = ExactMatrix{{0, 1, 0}, {0, 0, -1}, {0, 0, 0}};
  f.matrices.Z = ExactMatrix{{0, 0, 0}, {1, 0, 0}, {0, -1, 0}};
  f.convention = FieldConvention::Paper;
  return f;
}

ExactMatrix linear_field_bracket(const ExactMatrix& u, const ExactMatrix& v) { return v * u - u * v; }

bool on_nullcone(const Vec<Rational>& x) {
  require_size3(x);
  return sgn(q3(x, x)) == 0;
}

bool on_nullcone(const Point& x, double tolerance) {
  if (x.size() != 3) throw Error(ErrorKind::Dimension, "Hopf chart points have 3 coordinates");
  return std::abs(2 * x[0] * x[2] + x[1] * x[1]) <= tolerance;
}

ConicalOrbitData conical_stabilizer(const HopfModel& model, const Vec<Rational>& v) {
  require_size3(v);
  if (is_zero_vec(v)) throw Error(ErrorKind::Domain, "the zero vector is not a point of the chart");
  if (!on_nullcone(v)) throw Error(ErrorKind::Domain, "v is not on the nullcone (q(v) = " + to_string(q3(v, v)) + ")");
  if (v[0] - v[2] <= 0) throw Error(ErrorKind::Domain, "v is not future pointing");

  Vec<Rational> c;
  for (std::size_t i = 0; i < 3 && c.empty(); ++i) {
    auto e = unit_vector<Rational>(3, i);
    if (sgn(q3(v, e)) != 0) c = e;
  }
  const Rational qvc = q3(v, c);
  Vec<Rational> u = sub(scale(c, Rational(1 / qvc)), scale(v, Rational(q3(c, c) / (2 * qvc * qvc))));

  ExactMatrix constraints(2, 3);
  const auto su = HopfModel::form().apply(u), sv = HopfModel::form().apply(v);
  for (std::size_t j = 0; j < 3; ++j) {
    constraints(0, j) = su[j];
    constraints(1, j) = sv[j];
  }
  Vec<Rational> w = nullspace(constraints).col(0);
  if (auto r = exact_sqrt(q3(w, w))) w = scale(w, Rational(1 / *r));

  ConicalOrbitData d;
  d.v = v;
  d.u = u;
  d.w = w;
  const Rational lam = model.lambda;
  d.f = ExactMatrix(3, 3);
  d.U_gen = ExactMatrix(3, 3);
  for (std::size_t j = 0; j < 3; ++j) {
    const auto x = unit_vector<Rational>(3, j);
    const Rational xu = q3(x, u), xv = q3(x, v), xw = q3(x, w);
    for (std::size_t i = 0; i < 3; ++i) {
      d.f(i, j) = lam * xu * v[i] + xv * u[i] / lam + (x[i] - xu * v[i] - xv * u[i]);
      d.U_gen(i, j) = xw * v[i] - xv * w[i];
    }
  }
  return d;
}

OrbitForm orbit_form(const std::vector<ExactMatrix>& generators, const MetricSpec& metric, const Point& x,
                     double tolerance) {
  const int n = metric.dim();
  if (static_cast<int>(x.size()) != n) throw Error(ErrorKind::Dimension, "basepoint dimension mismatch");
  const int k = static_cast<int>(generators.size());
  Eigen::MatrixXd ev(n, k);
  for (int c = 0; c < k; ++c) {
    const auto& a = generators[static_cast<std::size_t>(c)];
    if (a.rows() != static_cast<std::size_t>(n) || !a.is_square())
      throw Error(ErrorKind::Dimension, "generator size does not match the chart");
    for (int r = 0; r < n; ++r) {
      double s = 0;
      for (int j = 0; j < n; ++j) s += a(static_cast<std::size_t>(r), static_cast<std::size_t>(j)).get_d() * x[static_cast<std::size_t>(j)];
      ev(r, c) = s;
    }
  }
  OrbitForm out;
  out.basepoint = x;
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());

  Eigen::FullPivLU<Eigen::MatrixXd> lu(ev);
  lu.setThreshold(tolerance / scale);
  const Eigen::MatrixXd kernel = lu.rank() < k ? Eigen::MatrixXd(lu.kernel()) : Eigen::MatrixXd(k, 0);
  for (int c = 0; c < kernel.cols(); ++c) {
    Eigen::VectorXd v = kernel.col(c);
    v /= v.cwiseAbs().maxCoeff();
    out.stabilizer.emplace_back(v.data(), v.data() + v.size());
  }

  Eigen::MatrixXd chosen(n, 0);
  for (int c = 0; c < k; ++c) {
    Eigen::MatrixXd trial(n, chosen.cols() + 1);
    trial << chosen, ev.col(c);
    Eigen::FullPivLU<Eigen::MatrixXd> t(trial);
    t.setThreshold(tolerance / scale);
    if (t.rank() == trial.cols()) {
      chosen = trial;
      out.quotient_basis.push_back(c);
    }
  }
  if (out.quotient_basis.empty()) return out;

  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) g(i, j) = g(j, i) = evaluate(metric.g(i, j), x);
  out.gram = chosen.transpose() * g * chosen;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(out.gram);
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double e = es.eigenvalues()(i);
    if (e > tolerance) ++out.positive;
    else if (e < -tolerance) ++out.negative;
    else ++out.null;
  }
  return out;
}

ExactMatrix orthogonality_residual(const ExactMatrix& g, const So2nForm& form) {
  if (g.rows() != form.size() || !g.is_square()) throw Error(ErrorKind::Dimension, "group element has the wrong size");
  return g.transpose() * form.S * g - form.S;
}

EinPoint::EinPoint(So2nForm form, Vec<Rational> representative) : form_(std::move(form)), x_(std::move(representative)) {
  if (x_.size() != form_.size()) throw Error(ErrorKind::Dimension, "representative has the wrong size");
  if (is_zero_vec(x_)) throw Error(ErrorKind::Domain, "the zero vector does not represent a point");
  if (sgn(form_.eval(x_, x_)) != 0) throw Error(ErrorKind::Domain, "representative is not isotropic");
}

bool EinPoint::operator==(const EinPoint& o) const {
  if (form_.n != o.form_.n) return false;
  ExactMatrix m = ExactMatrix::from_columns({x_, o.x_}, x_.size());
  return rank(m) == 1;
}

EinPoint ein_act(const ExactMatrix& g, const EinPoint& p) {
  if (!orthogonality_residual(g, p.form()).is_zero())
    throw Error(ErrorKind::Membership, "matrix does not preserve the quadratic form");
  return EinPoint(p.form(), g.apply(p.representative()));
}

}  // namespace conflab
