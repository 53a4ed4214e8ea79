#include "conflab/metric.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "conflab/errors.hpp"

namespace conflab {

MetricSpec::MetricSpec(Chart chart) : chart_(std::move(chart)) {
  if (chart_.dim < 3) throw Error(ErrorKind::Domain, "metric dimension must be at least 3");
  if (static_cast<int>(chart_.coords.size()) != chart_.dim)
    throw Error(ErrorKind::Domain, "coordinate count does not match the dimension");
  auto sorted = chart_.coords;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(ErrorKind::Domain, "repeated coordinate name");
  const auto n = static_cast<std::size_t>(chart_.dim);
  upper_.assign(n * (n + 1) / 2, Expr::num(0));
}

std::size_t MetricSpec::slot(int i, int j) const {
  if (i < 0 || j < 0 || i >= chart_.dim || j >= chart_.dim) throw Error(ErrorKind::Dimension, "metric index out of range");
  if (i > j) std::swap(i, j);
  const auto n = static_cast<std::size_t>(chart_.dim);
  const auto a = static_cast<std::size_t>(i), b = static_cast<std::size_t>(j);
  return a * (2 * n - a + 1) / 2 + (b - a);
}

const Expr& MetricSpec::g(int i, int j) const { return upper_[slot(i, j)]; }

void MetricSpec::set(int i, int j, Expr e) { upper_[slot(i, j)] = std::move(e); }

Expr MetricSpec::coordinate(int i) const {
  if (i < 0 || i >= chart_.dim) throw Error(ErrorKind::Dimension, "coordinate index out of range");
  return Expr::var(i, chart_.coords[static_cast<std::size_t>(i)]);
}

bool MetricSpec::operator==(const MetricSpec& o) const {
  return chart_.dim == o.chart_.dim && chart_.coords == o.chart_.coords && upper_ == o.upper_ &&
         general_signature_ == o.general_signature_;
}

std::string print_metric(const MetricSpec& spec) {
  std::ostringstream os;
  os << "dim " << spec.dim() << ";\ncoords";
  for (const auto& c : spec.chart().coords) os << ' ' << c;
  os << ";\n";
  if (spec.general_signature()) os << "signature any;\n";
  for (int i = 0; i < spec.dim(); ++i)
    for (int j = i; j < spec.dim(); ++j)
      if (!spec.g(i, j).is_num(0)) os << "g[" << i + 1 << "," << j + 1 << "] = " << to_string(spec.g(i, j)) << ";\n";
  return os.str();
}

namespace {

const std::map<std::string, std::string>& builtin_sources() {
  static const std::map<std::string, std::string> sources = {
      {"minkowski3", "dim 3; coords t x y; g[1,1]=-1; g[2,2]=1; g[3,3]=1;"},
      {"minkowski4", "dim 4; coords t x y z; g[1,1]=-1; g[2,2]=1; g[3,3]=1; g[4,4]=1;"},
      {"hopf3", "dim 3; coords x1 x2 x3; g[1,3]=1; g[2,2]=1;"},
      {"ppwave-x2", "dim 4; coords u v x y; g[1,2]=1; g[1,1]=x^2; g[3,3]=1; g[4,4]=1;"},
      {"einstein-static3", "dim 3; coords t th ph; g[1,1]=-1; g[2,2]=1; g[3,3]=sin(th)^2;"},
  };
  return sources;
}

}  // namespace

const std::vector<std::string>& builtin_metric_names() {
  static const std::vector<std::string> names = {"minkowski3", "minkowski4", "hopf3", "ppwave-x2", "einstein-static3"};
  return names;
}

std::string builtin_metric_source(const std::string& name) {
  auto it = builtin_sources().find(name);
  if (it == builtin_sources().end()) throw Error(ErrorKind::Domain, "unknown builtin metric '" + name + "'");
  return it->second;
}

MetricSpec builtin_metric(const std::string& name) { return parse_metric(builtin_metric_source(name)); }

MetricSpec load_metric(const std::string& name_or_path) {
  if (builtin_sources().count(name_or_path)) return builtin_metric(name_or_path);
  std::ifstream in(name_or_path);
  if (!in) throw Error(ErrorKind::Domain, "no builtin metric or readable file named '" + name_or_path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_metric(buf.str());
}

MetricSpec conformal_rescale(const MetricSpec& g, const Expr& phi) {
  MetricSpec out = g;
  for (int i = 0; i < g.dim(); ++i)
    for (int j = i; j < g.dim(); ++j) out.set(i, j, phi * g.g(i, j));
  return out;
}

}  // namespace conflab
