#pragma once

#include <array>
#include <memory>
#include <vector>

#include "conflab/metric.hpp"

namespace conflab {

/// Dense array of dim^rank doubles, indexed in the order the indices are
/// written in the formulas (upper indices first where noted).
class Tensor {
 public:
  Tensor() = default;
  Tensor(int dim, int rank);

  int dim() const { return dim_; }
  int rank() const { return rank_; }
  bool empty() const { return data_.empty(); }

  template <class... I>
  double& operator()(I... idx) {
    return data_[flat({static_cast<int>(idx)...})];
  }
  template <class... I>
  double operator()(I... idx) const {
    return data_[flat({static_cast<int>(idx)...})];
  }

  double max_abs() const;
  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t flat(std::initializer_list<int> idx) const;
  int dim_ = 0;
  int rank_ = 0;
  std::vector<double> data_;
};

/// Threshold on the normalized Weyl (dim >= 4) or Cotton (dim 3) size
/// below which a metric is reported conformally flat at a point.
inline constexpr double kConformalFlatnessThreshold = 1e-8;

/// Index conventions:
///   christoffel(k, i, j) = Gamma^k_{ij}
///   riemann(l, i, j, k)  = R^l_{ijk} = d_i Gamma^l_{jk} - d_j Gamma^l_{ik}
///                          + Gamma^l_{im} Gamma^m_{jk} - Gamma^l_{jm} Gamma^m_{ik}
///   riemann_down(i, j, k, l) = g_{lm} R^m_{ijk}
///   ricci(j, k) = R^i_{ijk},  scalar = g^{jk} Ric_{jk}
///   schouten = (Ric - scalar g / (2(n-1))) / (n-2)
///   weyl_down(i,j,k,l) = R_{ijkl} - (P_{jk} g_{il} + P_{il} g_{jk} - P_{ik} g_{jl} - P_{jl} g_{ik})
///   weyl(l, i, j, k) = g^{lm} W_{ijkm}           (type (3,1))
///   cotton(i, j, k) = nabla_i P_{jk} - nabla_j P_{ik}
struct CurvatureReport {
  std::vector<double> point;
  int dim = 0;
  Tensor metric;
  Tensor inverse_metric;
  Tensor christoffel;
  Tensor riemann;
  Tensor riemann_down;
  Tensor ricci;
  double scalar = 0;
  Tensor schouten;
  Tensor weyl;       ///< algebraic Weyl tensor, type (3,1), any dimension
  Tensor weyl_down;
  Tensor cotton;
  /// max |nabla g| from the computed Christoffel symbols.
  double compatibility_residual = 0;
  /// max |Weyl| for dim >= 4, max |Cotton| for dim 3.
  double max_abs_weyl_cotton = 0;
  /// max(1, max |g_ij|) at the point.
  double norm_scale = 1;
  bool conformally_flat = false;
};

/// Precompiled symbolic derivatives (up to third order) of a metric.
class CurvatureEngine {
 public:
  explicit CurvatureEngine(MetricSpec spec);
  ~CurvatureEngine();
  CurvatureEngine(CurvatureEngine&&) noexcept;
  CurvatureEngine& operator=(CurvatureEngine&&) noexcept;

  const MetricSpec& spec() const;

  /// Throws EvaluationError when g is singular at p and Error(Evaluation)
  /// when a Lorentzian spec has another signature there.
  CurvatureReport report(const std::vector<double>& p) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

CurvatureReport curvature(const MetricSpec& g, const std::vector<double>& p);
Tensor christoffel(const MetricSpec& g, const std::vector<double>& p);
/// Type (3,1) Weyl tensor; Error(Domain) unless dim >= 4.
Tensor weyl(const MetricSpec& g, const std::vector<double>& p);
/// Covariant Cotton tensor; Error(Domain) unless dim == 3.
Tensor cotton(const MetricSpec& g, const std::vector<double>& p);

/// max |L_V g - (2 div V / n) g| at p.
double conformal_killing_residual(const MetricSpec& g, const std::vector<Expr>& v, const std::vector<double>& p);

}  // namespace conflab
