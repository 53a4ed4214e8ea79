#include "conflab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "conflab/errors.hpp"

namespace conflab {

namespace {

double norm(const Point& x) {
  double s = 0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

Eigen::VectorXd to_eigen(const Point& x) { return Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size())); }

Point to_point(const Eigen::VectorXd& v) { return Point(v.data(), v.data() + v.size()); }

void check_dim(const FlowSpec& flow, const Point& x) {
  if (static_cast<int>(x.size()) != flow.dim())
    throw Error(ErrorKind::Dimension, "point has " + std::to_string(x.size()) + " coordinates, flow expects " +
                                          std::to_string(flow.dim()));
}

// Points closer than this to the origin count as having reached it.
constexpr double kOriginRadius = 1e-9;
constexpr double kBlowupRadius = 1e12;

void check_inside(const Point& x, double time) {
  for (double v : x)
    if (!std::isfinite(v)) throw EscapeError("trajectory left the chart (non-finite state)", time);
  const double r = norm(x);
  if (r < kOriginRadius) throw EscapeError("trajectory reached the deleted origin", time);
  if (r > kBlowupRadius) throw EscapeError("trajectory escaped to infinity", time);
}

Point axpy(const Point& x, double h, const Point& k) {
  Point out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + h * k[i];
  return out;
}

Point rk4_step(const FlowSpec& flow, const Point& x, double h, double time) {
  auto eval = [&](const Point& p) {
    try {
      return flow.field(p);
    } catch (const EscapeError&) {
      throw;
    } catch (const Error& e) {
      throw EscapeError(std::string("field undefined along the trajectory: ") + e.what(), time);
    }
  };
  const Point k1 = eval(x);
  const Point k2 = eval(axpy(x, h / 2, k1));
  const Point k3 = eval(axpy(x, h / 2, k2));
  const Point k4 = eval(axpy(x, h, k3));
  Point out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  return out;
}

Point rk4_fixed(const FlowSpec& flow, const Point& x0, double t, int steps) {
  Point x = x0;
  const double h = t / steps;
  for (int s = 0; s < steps; ++s) {
    x = rk4_step(flow, x, h, s * h);
    check_inside(x, (s + 1) * h);
  }
  return x;
}

// Chart-field flow without deck rescaling, step count doubled until stable.
Point rk4_adaptive(const FlowSpec& flow, const Point& x0, double t) {
  if (t == 0) return x0;
  int steps = std::max(4, static_cast<int>(std::ceil(std::abs(t) / 0.05)));
  Point coarse = rk4_fixed(flow, x0, t, steps);
  for (int round = 0; round < 14; ++round) {
    steps *= 2;
    Point fine = rk4_fixed(flow, x0, t, steps);
    double diff = 0;
    for (std::size_t i = 0; i < fine.size(); ++i) diff = std::max(diff, std::abs(fine[i] - coarse[i]));
    if (diff < 1e-10 * std::max(1.0, norm(fine))) return fine;
    coarse = std::move(fine);
  }
  return coarse;
}

// Raw (no deck) time-s map of the flow.
Point raw_flow(const FlowSpec& flow, const Point& x, double s) {
  if (flow.is_linear()) {
    const Eigen::MatrixXd e = (s * flow.generator()).exp();
    return to_point(e * to_eigen(x));
  }
  return rk4_adaptive(flow, x, s);
}

Eigen::MatrixXd raw_jacobian(const FlowSpec& flow, const Point& x, double s) {
  if (flow.is_linear()) return (s * flow.generator()).exp();
  const int n = flow.dim();
  constexpr double h = 1e-6;
  Eigen::MatrixXd j(n, n);
  for (int c = 0; c < n; ++c) {
    Point xp = x, xm = x;
    xp[static_cast<std::size_t>(c)] += h;
    xm[static_cast<std::size_t>(c)] -= h;
    const Point fp = raw_flow(flow, xp, s), fm = raw_flow(flow, xm, s);
    for (int r = 0; r < n; ++r) j(r, c) = (fp[static_cast<std::size_t>(r)] - fm[static_cast<std::size_t>(r)]) / (2 * h);
  }
  return j;
}

Eigen::MatrixXd metric_at(const MetricSpec& g, const Point& x) {
  const int n = g.dim();
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m(i, j) = m(j, i) = evaluate(g.g(i, j), x);
  return m;
}

}  // namespace

double DeckNormalizer::normalize(Point& x) const {
  const double r = norm(x);
  if (r == 0 || !std::isfinite(r)) throw EscapeError("cannot normalize the origin", 0);
  const int k = static_cast<int>(std::floor(std::log(r) / std::log(lambda)));
  double factor = std::pow(lambda, -k);
  // Guard the boundary against rounding in the logarithm.
  double scaled = r * factor;
  if (scaled >= lambda) factor /= lambda;
  else if (scaled < 1) factor *= lambda;
  if (factor == 1) return 1;
  for (double& v : x) v *= factor;
  return factor;
}

FlowSpec FlowSpec::linear(const ExactMatrix& a, FieldConvention convention) {
  if (a.rows() != a.cols() || a.rows() == 0) throw Error(ErrorKind::Dimension, "flow generator must be square");
  FlowSpec f;
  f.linear_ = true;
  f.dim_ = static_cast<int>(a.rows());
  f.a_.resize(f.dim_, f.dim_);
  const double sign = convention == FieldConvention::Paper ? -1.0 : 1.0;
  for (int i = 0; i < f.dim_; ++i)
    for (int j = 0; j < f.dim_; ++j)
      f.a_(i, j) = sign * a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).get_d();
  return f;
}

FlowSpec FlowSpec::chart(std::vector<Expr> field) {
  if (field.empty()) throw Error(ErrorKind::Dimension, "empty vector field");
  FlowSpec f;
  f.dim_ = static_cast<int>(field.size());
  f.field_ = std::move(field);
  f.jac_.resize(f.field_.size());
  for (std::size_t i = 0; i < f.field_.size(); ++i)
    for (int j = 0; j < f.dim_; ++j) f.jac_[i].push_back(differentiate(f.field_[i], j));
  return f;
}

FlowSpec FlowSpec::with_normalizer(double lambda) const {
  if (!(lambda > 1)) throw Error(ErrorKind::Domain, "deck ratio must exceed 1");
  FlowSpec f = *this;
  f.normalizer_ = DeckNormalizer{lambda};
  return f;
}

FlowSpec FlowSpec::reversed() const {
  FlowSpec f = *this;
  f.a_ = -a_;
  f.sign_ = -sign_;
  return f;
}

Point FlowSpec::field(const Point& x) const {
  if (linear_) return to_point(a_ * to_eigen(x));
  Point out(field_.size());
  for (std::size_t i = 0; i < field_.size(); ++i) out[i] = sign_ * evaluate(field_[i], x);
  return out;
}

Eigen::MatrixXd FlowSpec::field_jacobian(const Point& x) const {
  if (linear_) return a_;
  Eigen::MatrixXd j(dim_, dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c)
      j(r, c) = sign_ * evaluate(jac_[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)], x);
  return j;
}

FlowResult advance(const FlowSpec& flow, const Point& x0, double t) {
  check_dim(flow, x0);
  check_inside(x0, 0);
  FlowResult out;
  out.x = raw_flow(flow, x0, t);
  check_inside(out.x, t);
  out.jacobian = raw_jacobian(flow, x0, t);
  if (flow.normalizer()) {
    out.deck_factor = flow.normalizer()->normalize(out.x);
    out.jacobian *= out.deck_factor;
  }
  return out;
}

Point integrate(const FlowSpec& flow, const Point& x0, double t) {
  check_dim(flow, x0);
  check_inside(x0, 0);
  Point x = raw_flow(flow, x0, t);
  check_inside(x, t);
  if (flow.normalizer()) flow.normalizer()->normalize(x);
  return x;
}

CocycleSample map_distortion(const MetricSpec& g, const Point& x, const Point& y, const Eigen::MatrixXd& d,
                             double tolerance) {
  const Eigen::MatrixXd gx = metric_at(g, x);
  const Eigen::MatrixXd pulled = d.transpose() * metric_at(g, y) * d;
  const double denom = (gx.array() * gx.array()).sum();
  if (denom == 0) throw Error(ErrorKind::Evaluation, "metric vanishes at the base point");
  const double lambda = (pulled.array() * gx.array()).sum() / denom;
  CocycleSample s;
  s.x = x;
  s.lambda = lambda;
  const double scale = std::max(std::abs(lambda) * gx.cwiseAbs().maxCoeff(), 1e-300);
  s.residual = (pulled - lambda * gx).cwiseAbs().maxCoeff() / scale;
  if (!(lambda > 0) || s.residual > tolerance)
    throw Error(ErrorKind::Conformality, "map is not conformal at the point (residual " + std::to_string(s.residual) +
                                             ", ratio " + std::to_string(lambda) + ")");
  return s;
}

CocycleSample conformal_distortion(const FlowSpec& flow, const MetricSpec& g, const Point& x, double t,
                                   double tolerance) {
  check_dim(flow, x);
  if (g.dim() != flow.dim()) throw Error(ErrorKind::Dimension, "metric and flow dimensions differ");
  check_inside(x, 0);
  const Point y = raw_flow(flow, x, t);
  check_inside(y, t);
  CocycleSample s = map_distortion(g, x, y, raw_jacobian(flow, x, t), tolerance);
  s.t = t;
  return s;
}

LyapunovSpectrum lyapunov_spectrum(const FlowSpec& flow, const Point& x0, double T, double dt) {
  check_dim(flow, x0);
  if (!(T > 0) || !(dt > 0)) throw Error(ErrorKind::Domain, "T and dt must be positive");
  const int n = flow.dim();
  const auto steps = static_cast<std::size_t>(std::llround(T / dt));
  if (steps == 0) throw Error(ErrorKind::Domain, "T shorter than one step");
  const double h = T / static_cast<double>(steps);
  const std::size_t checkpoint = steps - steps / 10;

  Point x = x0;
  check_inside(x, 0);
  if (flow.normalizer()) flow.normalizer()->normalize(x);
  Eigen::MatrixXd q = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd sums = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd at_checkpoint = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd dir = to_eigen(flow.field(x));
  const double dir0 = dir.norm();
  if (dir0 > 0) dir /= dir0;
  double dir_log = 0;
  const Eigen::MatrixXd linear_step = flow.is_linear() ? Eigen::MatrixXd((h * flow.generator()).exp()) : Eigen::MatrixXd();

  for (std::size_t s = 0; s < steps; ++s) {
    const double time = static_cast<double>(s) * h;
    Eigen::MatrixXd j;
    Point next;
    if (flow.is_linear()) {
      j = linear_step;
      next = to_point(j * to_eigen(x));
    } else {
      next = raw_flow(flow, x, h);
      j = raw_jacobian(flow, x, h);
    }
    check_inside(next, time + h);
    if (flow.normalizer()) j *= flow.normalizer()->normalize(next);
    x = std::move(next);

    Eigen::HouseholderQR<Eigen::MatrixXd> qr(j * q);
    Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    q = qr.householderQ();
    for (int i = 0; i < n; ++i) {
      if (r(i, i) < 0) {
        q.col(i) = -q.col(i);
        r(i, i) = -r(i, i);
      }
      sums(i) += std::log(r(i, i));
    }
    if (dir0 > 0) {
      dir = j * dir;
      const double m = dir.norm();
      dir_log += std::log(m);
      dir /= m;
    }
    if (s + 1 == checkpoint) at_checkpoint = sums / (static_cast<double>(checkpoint) * h);
  }

  LyapunovSpectrum out;
  out.T = T;
  out.steps = steps;
  Eigen::VectorXd est = sums / T;
  std::vector<std::pair<double, double>> pairs;
  for (int i = 0; i < n; ++i) pairs.emplace_back(est(i), std::abs(est(i) - at_checkpoint(i)));
  std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  out.converged = true;
  for (const auto& [e, d] : pairs) {
    out.exponents.push_back(e);
    out.drift.push_back(d);
    if (d > 0.05) out.converged = false;
  }
  for (double e : out.exponents) {
    if (!out.distinct.empty() && std::abs(out.distinct.back() - e) < 1e-2) {
      ++out.multiplicities.back();
    } else {
      out.distinct.push_back(e);
      out.multiplicities.push_back(1);
    }
  }
  out.flow_direction_exponent = dir_log / T;
  return out;
}

Transversal default_transversal(const FlowSpec& flow, const Point& seed) {
  check_dim(flow, seed);
  Point f = flow.field(seed);
  const double m = norm(f);
  if (m == 0) throw Error(ErrorKind::Domain, "seed is a zero of the field; no transversal");
  for (double& v : f) v /= m;
  return Transversal{seed, f};
}

namespace {

double height(const Transversal& tr, const Point& x) {
  double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += tr.normal[i] * (x[i] - tr.point[i]);
  return s;
}

}  // namespace

ReturnHit first_return(const FlowSpec& flow, const Point& x0, const Transversal& tr, const PeriodicOptions& options) {
  check_dim(flow, x0);
  if (tr.point.size() != x0.size() || tr.normal.size() != x0.size())
    throw Error(ErrorKind::Dimension, "transversal dimension mismatch");
  const double h = options.scan_step;
  const Eigen::MatrixXd linear_step = flow.is_linear() ? Eigen::MatrixXd((h * flow.generator()).exp()) : Eigen::MatrixXd();
  Point x = x0;
  double time = 0;
  double hx = height(tr, x);
  bool left = false;
  while (time < options.max_return_time) {
    Point raw = flow.is_linear() ? to_point(linear_step * to_eigen(x)) : raw_flow(flow, x, h);
    check_inside(raw, time + h);
    const double hr = height(tr, raw);
    // The orbit must first leave the plane before a return can count.
    if (!left && std::abs(hr) > 1e-9) left = true;
    if (left && hx < 0 && hr >= 0) {
      double lo = 0, hi = h, flo = hx, fhi = hr;
      for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        double mid = fhi != flo ? lo - flo * (hi - lo) / (fhi - flo) : (lo + hi) / 2;
        if (!(mid > lo && mid < hi) || it % 3 == 2) mid = (lo + hi) / 2;
        const double fm = height(tr, raw_flow(flow, x, mid));
        if (fm < 0) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
          fhi = fm;
        }
        if (fm == 0) break;
      }
      return ReturnHit{raw_flow(flow, x, hi), time + hi};
    }
    if (flow.normalizer()) flow.normalizer()->normalize(raw);
    x = std::move(raw);
    hx = height(tr, x);
    time += h;
  }
  throw Error(ErrorKind::NoReturn, "orbit did not return to the transversal within time " +
                                       std::to_string(options.max_return_time));
}

PeriodicOrbit find_periodic(const FlowSpec& flow, const Point& seed, const Transversal& tr,
                            const PeriodicOptions& options) {
  Point x = seed;
  double prev_step = std::numeric_limits<double>::infinity();
  int growth = 0;
  for (int it = 1; it <= options.max_iterations; ++it) {
    const ReturnHit hit = first_return(flow, x, tr, options);
    double step = 0;
    for (std::size_t i = 0; i < x.size(); ++i) step = std::max(step, std::abs(hit.point[i] - x[i]));
    x = hit.point;
    if (step > prev_step) {
      if (++growth >= 5) throw Error(ErrorKind::Divergence, "first-return iteration is not contracting");
    } else {
      growth = 0;
    }
    if (step > 1e6) throw Error(ErrorKind::Divergence, "first-return iteration diverged");
    prev_step = step;
    if (step < options.tolerance * std::max(1.0, norm(x))) {
      PeriodicOrbit out;
      out.point = x;
      out.period = first_return(flow, x, tr, options).time;
      out.iterations = it;
      const FlowResult full = advance(flow, x, out.period);
      out.monodromy = full.jacobian;
      Point base = x;
      if (flow.normalizer()) flow.normalizer()->normalize(base);
      double closure = 0;
      for (std::size_t i = 0; i < x.size(); ++i) closure = std::max(closure, std::abs(full.x[i] - base[i]));
      out.closure_residual = closure;
      const Eigen::VectorXd f = to_eigen(flow.field(x));
      out.flow_direction_residual = (out.monodromy * f - f).norm() / f.norm();
      return out;
    }
  }
  throw Error(ErrorKind::Divergence, "first-return iteration did not settle within " +
                                         std::to_string(options.max_iterations) + " iterations");
}

}  // namespace conflab
