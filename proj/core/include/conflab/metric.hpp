#pragma once

#include <string>
#include <vector>

#include "conflab/expr.hpp"

namespace conflab {

struct Chart {
  int dim = 0;
  std::vector<std::string> coords;
};

/// Chart-defined metric. Only the upper triangle (i <= j) is stored.
class MetricSpec {
 public:
  MetricSpec() = default;
  /// All components start at 0. Throws Error(Domain) for dim < 3 or a
  /// coordinate list of the wrong length or with repeated names.
  explicit MetricSpec(Chart chart);

  const Chart& chart() const { return chart_; }
  int dim() const { return chart_.dim; }

  /// 0-based, either index order.
  const Expr& g(int i, int j) const;
  void set(int i, int j, Expr e);

  /// Metrics default to Lorentzian signature checks; a general
  /// pseudo-Riemannian spec skips them.
  bool general_signature() const { return general_signature_; }
  void set_general_signature(bool v) { general_signature_ = v; }

  /// Coordinate expression for chart coordinate i.
  Expr coordinate(int i) const;

  bool operator==(const MetricSpec& o) const;

 private:
  std::size_t slot(int i, int j) const;
  Chart chart_;
  std::vector<Expr> upper_;
  bool general_signature_ = false;
};

/// Parses the metric file grammar:
///
///   file  := stmt*
///   stmt  := "dim" INT ";" | "coords" IDENT+ ";" | "g" "[" INT "," INT "]" "=" expr ";"
///           | "signature" "any" ";"
///
/// Expressions use + - * / with the usual precedence, unary minus, right
/// associative ^ with an integer exponent, parentheses and the functions
/// exp, sin, cos, sqrt, log. Numbers may be integers, decimals or carry an
/// exponent; they are kept exact. '#' starts a comment running to the end
/// of the line. Indices are 1-based and g[i,j] also sets g[j,i]. Repeating
/// an assignment with an identical expression is accepted; a different one
/// is an error.
MetricSpec parse_metric(const std::string& text);

/// Text in the same grammar that parses back to an equal spec.
std::string print_metric(const MetricSpec& spec);

/// Builtin names: minkowski3, minkowski4, hopf3, ppwave-x2, einstein-static3.
const std::vector<std::string>& builtin_metric_names();
std::string builtin_metric_source(const std::string& name);
MetricSpec builtin_metric(const std::string& name);

/// A builtin name or the path of a metric file.
MetricSpec load_metric(const std::string& name_or_path);

/// Component-wise product phi * g.
MetricSpec conformal_rescale(const MetricSpec& g, const Expr& phi);

}  // namespace conflab
