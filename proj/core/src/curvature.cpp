#include "conflab/curvature.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>

#include "conflab/errors.hpp"

namespace conflab {

Tensor::Tensor(int dim, int rank) : dim_(dim), rank_(rank) {
  std::size_t size = 1;
  for (int r = 0; r < rank; ++r) size *= static_cast<std::size_t>(dim);
  data_.assign(size, 0.0);
}

std::size_t Tensor::flat(std::initializer_list<int> idx) const {
  std::size_t f = 0;
  for (int i : idx) f = f * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
  return f;
}

double Tensor::max_abs() const {
  double m = 0;
  for (double x : data_) m = std::max(m, std::abs(x));
  return m;
}

namespace {

/// Truncated Taylor data of a scalar function: value, gradient and (for
/// second-order jets) the Hessian.
struct Jet {
  double v = 0;
  std::vector<double> d;
  std::vector<double> h;  // row-major n x n; empty for first-order jets

  static Jet zero(int n, int order) {
    Jet j;
    j.d.assign(static_cast<std::size_t>(n), 0.0);
    if (order >= 2) j.h.assign(static_cast<std::size_t>(n * n), 0.0);
    return j;
  }
  int order() const { return h.empty() ? 1 : 2; }
  int n() const { return static_cast<int>(d.size()); }

  double hess(int a, int b) const { return h[static_cast<std::size_t>(a * n() + b)]; }

  Jet& operator+=(const Jet& o) {
    v += o.v;
    for (std::size_t a = 0; a < d.size(); ++a) d[a] += o.d[a];
    if (!h.empty()) {
      if (o.h.empty()) h.clear();
      else
        for (std::size_t k = 0; k < h.size(); ++k) h[k] += o.h[k];
    }
    return *this;
  }

  Jet scaled(double s) const {
    Jet r = *this;
    r.v *= s;
    for (auto& x : r.d) x *= s;
    for (auto& x : r.h) x *= s;
    return r;
  }

  /// First-order jet of the partial derivative along coordinate i.
  Jet partial(int i) const {
    Jet r = zero(n(), 1);
    r.v = d[static_cast<std::size_t>(i)];
    for (int a = 0; a < n(); ++a) r.d[static_cast<std::size_t>(a)] = hess(i, a);
    return r;
  }

  Jet truncated() const {
    Jet r = *this;
    r.h.clear();
    return r;
  }
};

Jet operator*(const Jet& a, const Jet& b) {
  const int n = a.n();
  const int order = std::min(a.order(), b.order());
  Jet r = Jet::zero(n, order);
  r.v = a.v * b.v;
  for (int i = 0; i < n; ++i) r.d[static_cast<std::size_t>(i)] = a.d[static_cast<std::size_t>(i)] * b.v + a.v * b.d[static_cast<std::size_t>(i)];
  if (order >= 2)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        r.h[static_cast<std::size_t>(i * n + j)] = a.hess(i, j) * b.v + a.d[static_cast<std::size_t>(i)] * b.d[static_cast<std::size_t>(j)] +
                                                   a.d[static_cast<std::size_t>(j)] * b.d[static_cast<std::size_t>(i)] + a.v * b.hess(i, j);
  return r;
}

using JetMatrix = std::vector<std::vector<Jet>>;

std::vector<int> sorted_key(std::vector<int> k) {
  std::sort(k.begin(), k.end());
  return k;
}

}  // namespace

struct CurvatureEngine::Impl {
  MetricSpec spec;
  int n = 0;
  std::vector<std::pair<int, int>> comps;  // upper-triangle component list
  std::map<std::vector<int>, std::vector<Expr>> derivs;

  explicit Impl(MetricSpec s) : spec(std::move(s)), n(spec.dim()) {
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) comps.emplace_back(i, j);
    std::vector<Expr> base;
    for (auto [i, j] : comps) base.push_back(spec.g(i, j));
    derivs[{}] = base;
    for (int a = 0; a < n; ++a) {
      derivs[{a}] = differentiate_all(base, a);
      for (int b = a; b < n; ++b) {
        derivs[{a, b}] = differentiate_all(derivs[{a}], b);
        for (int c = b; c < n; ++c) derivs[{a, b, c}] = differentiate_all(derivs[{a, b}], c);
      }
    }
  }

  static std::vector<Expr> differentiate_all(const std::vector<Expr>& es, int index) {
    std::vector<Expr> out;
    out.reserve(es.size());
    for (const auto& e : es) out.push_back(differentiate(e, index));
    return out;
  }

  std::size_t comp_index(int i, int j) const {
    if (i > j) std::swap(i, j);
    const auto a = static_cast<std::size_t>(i), b = static_cast<std::size_t>(j), nn = static_cast<std::size_t>(n);
    return a * (2 * nn - a + 1) / 2 + (b - a);
  }

  CurvatureReport report(const std::vector<double>& p) const;
};

CurvatureReport CurvatureEngine::Impl::report(const std::vector<double>& p) const {
  if (static_cast<int>(p.size()) != n)
    throw Error(ErrorKind::Dimension, "point has " + std::to_string(p.size()) + " coordinates, chart has " + std::to_string(n));
  std::map<std::vector<int>, std::vector<double>> vals;
  for (const auto& [key, es] : derivs) {
    std::vector<double> v(es.size());
    for (std::size_t c = 0; c < es.size(); ++c) v[c] = es[c].is_num() ? es[c].value().get_d() : evaluate(es[c], p);
    vals.emplace(key, std::move(v));
  }
  auto gd = [&](int i, int j, std::vector<int> key) { return vals.at(sorted_key(std::move(key)))[comp_index(i, j)]; };
  const auto N = static_cast<std::size_t>(n);

  CurvatureReport r;
  r.point = p;
  r.dim = n;
  r.metric = Tensor(n, 2);
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = r.metric(i, j) = gd(i, j, {});
  r.norm_scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  const double det = g.determinant();
  if (!std::isfinite(det) || std::abs(det) <= 1e-13 * std::pow(r.norm_scale, n))
    throw EvaluationError("metric is singular at the evaluation point", det);
  if (!spec.general_signature()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
    int negative = 0;
    for (int i = 0; i < n; ++i)
      if (es.eigenvalues()(i) < 0) ++negative;
    if (negative != 1) throw Error(ErrorKind::Evaluation, "metric is not Lorentzian at the evaluation point");
  }
  const Eigen::MatrixXd gi = g.inverse();
  r.inverse_metric = Tensor(n, 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.inverse_metric(i, j) = gi(i, j);

  // Derivatives of the inverse metric up to second order.
  std::vector<Eigen::MatrixXd> g1(N, Eigen::MatrixXd(n, n));
  std::vector<std::vector<Eigen::MatrixXd>> g2(N, std::vector<Eigen::MatrixXd>(N, Eigen::MatrixXd(n, n)));
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        g1[static_cast<std::size_t>(a)](i, j) = gd(i, j, {a});
        for (int b = 0; b < n; ++b) g2[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)](i, j) = gd(i, j, {a, b});
      }
  JetMatrix ginv(N, std::vector<Jet>(N, Jet::zero(n, 2)));
  {
    std::vector<Eigen::MatrixXd> gi1(N);
    for (std::size_t a = 0; a < N; ++a) gi1[a] = -gi * g1[a] * gi;
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t b = 0; b < N; ++b) {
        Eigen::MatrixXd h = -gi * g2[a][b] * gi - gi1[a] * g1[b] * gi - gi1[b] * g1[a] * gi;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) ginv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].h[a * N + b] = h(i, j);
      }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Jet& jt = ginv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        jt.v = gi(i, j);
        for (std::size_t a = 0; a < N; ++a) jt.d[a] = gi1[a](i, j);
      }
  }

  // dg(c, i, j): second-order jet of d_c g_ij.
  auto dg = [&](int c, int i, int j) {
    Jet jt = Jet::zero(n, 2);
    jt.v = gd(i, j, {c});
    for (int a = 0; a < n; ++a) {
      jt.d[static_cast<std::size_t>(a)] = gd(i, j, {a, c});
      for (int b = 0; b < n; ++b) jt.h[static_cast<std::size_t>(a * n + b)] = gd(i, j, {a, b, c});
    }
    return jt;
  };

  // Christoffel symbols as second-order jets.
  std::vector<JetMatrix> gamma(N, JetMatrix(N, std::vector<Jet>(N, Jet::zero(n, 2))));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      std::vector<Jet> lowered(N);
      for (int l = 0; l < n; ++l) {
        Jet s = dg(i, j, l);
        s += dg(j, i, l);
        s += dg(l, i, j).scaled(-1);
        lowered[static_cast<std::size_t>(l)] = s.scaled(0.5);
      }
      for (int k = 0; k < n; ++k) {
        Jet acc = Jet::zero(n, 2);
        for (int l = 0; l < n; ++l) acc += ginv[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] * lowered[static_cast<std::size_t>(l)];
        gamma[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = acc;
        gamma[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = acc;
      }
    }
  auto G = [&](int k, int i, int j) -> const Jet& {
    return gamma[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  };
  r.christoffel = Tensor(n, 3);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r.christoffel(k, i, j) = G(k, i, j).v;

  // Metric compatibility: d_k g_ij - Gamma^m_ki g_mj - Gamma^m_kj g_im.
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = gd(i, j, {k});
        for (int m = 0; m < n; ++m) s -= G(m, k, i).v * g(m, j) + G(m, k, j).v * g(i, m);
        r.compatibility_residual = std::max(r.compatibility_residual, std::abs(s));
      }

  // Riemann tensor as first-order jets.
  std::vector<Jet> riem(N * N * N * N, Jet::zero(n, 1));
  auto R = [&](int l, int i, int j, int k) -> Jet& {
    return riem[((static_cast<std::size_t>(l) * N + static_cast<std::size_t>(i)) * N + static_cast<std::size_t>(j)) * N +
                static_cast<std::size_t>(k)];
  };
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          if (i == j) continue;
          Jet acc = G(l, j, k).partial(i);
          acc += G(l, i, k).partial(j).scaled(-1);
          for (int m = 0; m < n; ++m) {
            acc += G(l, i, m).truncated() * G(m, j, k).truncated();
            acc += (G(l, j, m).truncated() * G(m, i, k).truncated()).scaled(-1);
          }
          R(l, i, j, k) = acc;
        }
  r.riemann = Tensor(n, 4);
  r.riemann_down = Tensor(n, 4);
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          r.riemann(l, i, j, k) = R(l, i, j, k).v;
          double s = 0;
          for (int m = 0; m < n; ++m) s += g(l, m) * R(m, i, j, k).v;
          r.riemann_down(i, j, k, l) = s;
        }

  // Ricci, scalar and Schouten as first-order jets.
  JetMatrix ric(N, std::vector<Jet>(N, Jet::zero(n, 1)));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) ric[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] += R(i, i, j, k);
  Jet scalar = Jet::zero(n, 1);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      scalar += ginv[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)].truncated() * ric[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
  r.ricci = Tensor(n, 2);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) r.ricci(j, k) = ric[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)].v;
  r.scalar = scalar.v;

  const double nd = n;
  JetMatrix schouten(N, std::vector<Jet>(N, Jet::zero(n, 1)));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      Jet gjk = Jet::zero(n, 1);
      gjk.v = g(j, k);
      for (int a = 0; a < n; ++a) gjk.d[static_cast<std::size_t>(a)] = gd(j, k, {a});
      Jet p = ric[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
      p += (scalar * gjk).scaled(-1.0 / (2.0 * (nd - 1.0)));
      schouten[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = p.scaled(1.0 / (nd - 2.0));
    }
  auto P = [&](int j, int k) -> const Jet& { return schouten[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]; };
  r.schouten = Tensor(n, 2);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) r.schouten(j, k) = P(j, k).v;

  // Weyl tensor (both index types) and Cotton tensor.
  r.weyl_down = Tensor(n, 4);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          r.weyl_down(i, j, k, l) = r.riemann_down(i, j, k, l) -
                                    (P(j, k).v * g(i, l) + P(i, l).v * g(j, k) - P(i, k).v * g(j, l) - P(j, l).v * g(i, k));
  r.weyl = Tensor(n, 4);
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double s = 0;
          for (int m = 0; m < n; ++m) s += gi(l, m) * r.weyl_down(i, j, k, m);
          r.weyl(l, i, j, k) = s;
        }
  auto nablaP = [&](int i, int j, int k) {
    double s = P(j, k).d[static_cast<std::size_t>(i)];
    for (int m = 0; m < n; ++m) s -= G(m, i, j).v * P(m, k).v + G(m, i, k).v * P(j, m).v;
    return s;
  };
  r.cotton = Tensor(n, 3);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) r.cotton(i, j, k) = nablaP(i, j, k) - nablaP(j, i, k);

  r.max_abs_weyl_cotton = n >= 4 ? r.weyl.max_abs() : r.cotton.max_abs();
  r.conformally_flat = r.max_abs_weyl_cotton / r.norm_scale < kConformalFlatnessThreshold;
  return r;
}

CurvatureEngine::CurvatureEngine(MetricSpec spec) : impl_(std::make_unique<Impl>(std::move(spec))) {}
CurvatureEngine::~CurvatureEngine() = default;
CurvatureEngine::CurvatureEngine(CurvatureEngine&&) noexcept = default;
CurvatureEngine& CurvatureEngine::operator=(CurvatureEngine&&) noexcept = default;

const MetricSpec& CurvatureEngine::spec() const { return impl_->spec; }

CurvatureReport CurvatureEngine::report(const std::vector<double>& p) const { return impl_->report(p); }

CurvatureReport curvature(const MetricSpec& g, const std::vector<double>& p) { return CurvatureEngine(g).report(p); }

Tensor christoffel(const MetricSpec& g, const std::vector<double>& p) { return curvature(g, p).christoffel; }

Tensor weyl(const MetricSpec& g, const std::vector<double>& p) {
  if (g.dim() < 4) throw Error(ErrorKind::Domain, "the Weyl tensor test needs dimension >= 4; use the Cotton tensor");
  return curvature(g, p).weyl;
}

Tensor cotton(const MetricSpec& g, const std::vector<double>& p) {
  if (g.dim() != 3) throw Error(ErrorKind::Domain, "the Cotton tensor test applies in dimension 3 only");
  return curvature(g, p).cotton;
}

double conformal_killing_residual(const MetricSpec& g, const std::vector<Expr>& v, const std::vector<double>& p) {
  const int n = g.dim();
  if (static_cast<int>(v.size()) != n) throw Error(ErrorKind::Dimension, "vector field needs one component per coordinate");
  if (static_cast<int>(p.size()) != n) throw Error(ErrorKind::Dimension, "point dimension mismatch");
  Eigen::MatrixXd gm(n, n);
  std::vector<Eigen::MatrixXd> dgm(static_cast<std::size_t>(n), Eigen::MatrixXd(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      gm(i, j) = evaluate(g.g(i, j), p);
      for (int k = 0; k < n; ++k) dgm[static_cast<std::size_t>(k)](i, j) = evaluate(differentiate(g.g(i, j), k), p);
    }
  std::vector<double> vv(static_cast<std::size_t>(n));
  Eigen::MatrixXd dv(n, n);  // dv(i, k) = d_i V^k
  for (int k = 0; k < n; ++k) {
    vv[static_cast<std::size_t>(k)] = evaluate(v[static_cast<std::size_t>(k)], p);
    for (int i = 0; i < n; ++i) dv(i, k) = evaluate(differentiate(v[static_cast<std::size_t>(k)], i), p);
  }
  const double det = gm.determinant();
  if (std::abs(det) < 1e-300) throw EvaluationError("metric is singular at the evaluation point", det);
  const Eigen::MatrixXd gi = gm.inverse();
  double div = dv.trace();
  for (int k = 0; k < n; ++k) div += 0.5 * vv[static_cast<std::size_t>(k)] * (gi * dgm[static_cast<std::size_t>(k)]).trace();
  double worst = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double lie = 0;
      for (int k = 0; k < n; ++k)
        lie += vv[static_cast<std::size_t>(k)] * dgm[static_cast<std::size_t>(k)](i, j) + gm(k, j) * dv(i, k) + gm(i, k) * dv(j, k);
      worst = std::max(worst, std::abs(lie - 2.0 * div / n * gm(i, j)));
    }
  return worst;
}

}  // namespace conflab
