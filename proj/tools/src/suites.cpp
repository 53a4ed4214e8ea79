#include "conflab_tools/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <future>
#include <map>

#include <conflab/centralizer.hpp>
#include <conflab/curvature.hpp>
#include <conflab/dynamics.hpp>
#include <conflab/errors.hpp>
#include <conflab/holonomy.hpp>
#include <conflab/liealg.hpp>
#include <conflab/modelspaces.hpp>
#include <conflab/repclass.hpp>
#include <conflab/sampling.hpp>

namespace conflab::tools {

namespace {

using P = Provenance;
using conflab::to_string;
using tools::to_string;

std::string tag(const std::string& base, int n) { return base + ".n" + std::to_string(n); }

std::vector<int> sweep(const SuiteOptions& o, int lo, int hi) {
  if (o.n) return {*o.n};
  std::vector<int> out;
  for (int n = lo; n <= hi; ++n) out.push_back(n);
  return out;
}

std::string vec_text(const Vec<Rational>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + to_string(v[i]);
  return s + "]";
}

Vec<Rational> sorted(Vec<Rational> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// ---------------------------------------------------------------- liealg

Report suite_liealg(const SuiteOptions& o) {
  Report r{"liealg", {}, {}};
  Sampler sampler(o.seed);
  for (int n : sweep(o, 3, 8)) {
    const auto basis = so2n_basis(n);
    const auto un = static_cast<long long>(n);
    r.equal(tag("basis_size", n), static_cast<long long>(basis.size()), (un + 2) * (un + 1) / 2, P::Published);

    std::map<RootLabel, long long> counts;
    bool members = true;
    for (const auto& e : basis) {
      ++counts[e.label];
      members = members && is_member(e.matrix, So2nForm::make(n));
    }
    r.holds(tag("basis_in_algebra", n), members, P::Identity);
    r.equal(tag("dim_a", n), counts[RootLabel::A], 2, P::Published);
    r.equal(tag("dim_m", n), counts[RootLabel::M], (un - 2) * (un - 3) / 2, P::Published);
    for (auto l : {RootLabel::Alpha, RootLabel::AlphaPlus2Beta, RootLabel::NegAlpha, RootLabel::NegAlphaPlus2Beta})
      r.equal(tag("dim_" + to_string(l), n), counts[l], 1, P::Published);
    for (auto l : {RootLabel::Beta, RootLabel::AlphaPlusBeta, RootLabel::NegBeta, RootLabel::NegAlphaPlusBeta})
      r.equal(tag("dim_" + to_string(l), n), counts[l], un - 2, P::Published);

    std::size_t violations = 0;
    for (const auto& x : basis)
      for (const auto& y : basis) {
        const auto wx = weight_of(x.label), wy = weight_of(y.label);
        const auto allowed = labels_with_weight({wx.alpha + wy.alpha, wx.beta + wy.beta});
        for (auto l : root_decompose(bracket(x.matrix, y.matrix), n).support())
          if (std::find(allowed.begin(), allowed.end(), l) == allowed.end()) ++violations;
      }
    r.equal(tag("grading_violations", n), static_cast<long long>(violations), 0, P::Identity);

    std::size_t theta_failures = 0;
    for (int i = 0; i < 5; ++i) {
      const auto a = sampler.so2n_member(n), b = sampler.so2n_member(n);
      if (cartan_involution(bracket(a, b)) != bracket(cartan_involution(a), cartan_involution(b))) ++theta_failures;
    }
    r.equal(tag("cartan_involution_automorphism", n), static_cast<long long>(theta_failures), 0, P::Identity);
  }
  r.holds("sl2_triple", verify_sl2_triple(standard_sl2_triple()).ok, P::Identity);
  return r;
}

// ---------------------------------------------------------------- repclass

Vec<Rational> case_multiset(CaseLabel label, int n) {
  const Rational h(1, 2);
  Vec<Rational> v;
  auto zeros = [&](int k) {
    for (int i = 0; i < k; ++i) v.emplace_back(0);
  };
  switch (label) {
    case CaseLabel::IsotropicPlane:
      v = {h, -h, h, -h};
      zeros(n - 2);
      break;
    case CaseLabel::Lorentz3_TrivialComplement:
    case CaseLabel::Signature21:
      v = {1, -1};
      zeros(n);
      break;
    case CaseLabel::Lorentz3_SecondBlock:
      v = {1, 1, -1, -1};
      zeros(n - 2);
      break;
    case CaseLabel::Signature23:
      v = {2, 1, -1, -2};
      zeros(n - 2);
      break;
  }
  return sorted(v);
}

void classify_one(Report& r, CaseLabel label, int n) {
  const std::string base = "case_" + to_string(label);
  const auto c = classify_embedding(build_case(label, n), So2nForm::make(n));
  r.holds(tag(base + ".label", n), c.label == label, P::Identity, "classified as " + to_string(c.label));
  r.holds(tag(base + ".exact_basis", n), c.exact(), P::Identity);
  r.at_most(tag(base + ".gram_residual", n), c.gram_residual, 0, P::Identity);
  auto& nf = r.holds(tag(base + ".normal_form", n), sorted(c.normal_form) == case_multiset(label, n), P::Published);
  nf.measured = vec_text(sorted(c.normal_form));
  nf.expected = vec_text(case_multiset(label, n));
  r.equal(tag(base + ".nilpotency_equals_cyclic_dim", n), c.nilpotency_on_cyclic, static_cast<long long>(c.cyclic_dim),
          P::Derived);
}

Report suite_repclass(const SuiteOptions& o) {
  Report r{"repclass", {}, {}};
  std::vector<int> ds;
  if (o.d) ds = {*o.d};
  else if (!o.case_label) ds = {1, 2, 3, 4, 5, 6};
  for (int d : ds) {
    const auto rep = irreducible_rep(d);
    const std::string base = "irreducible.d" + std::to_string(d);
    r.holds(base + ".homomorphism", rep.residuals().ok, P::Identity);
    const auto forms = invariant_symmetric_forms(rep);
    r.equal(base + ".invariant_forms", static_cast<long long>(forms.basis.size()), d % 2 == 0 ? 1 : 0, P::Derived);
    if (forms.basis.size() == 1) {
      const auto s = signature(forms.basis.front());
      auto& c = r.equal(base + ".form_minor_index", std::min(s.pos, s.neg), d / 2, P::Derived);
      c.note = "inertia (" + std::to_string(s.pos) + ", " + std::to_string(s.neg) + ", " + std::to_string(s.null) + ")";
      r.equal(base + ".form_null", s.null, 0, P::Derived);
    }
  }
  if (o.case_label) {
    classify_one(r, parse_case_label(*o.case_label), o.n.value_or(4));
  } else if (!o.d) {
    for (int n : sweep(o, 3, 6))
      for (auto label : all_case_labels()) {
        if (label == CaseLabel::Lorentz3_SecondBlock && n < 4) continue;
        classify_one(r, label, n);
      }
  }
  return r;
}

// ---------------------------------------------------------------- curvature

std::vector<double> default_point(int dim) {
  std::vector<double> p;
  for (int i = 0; i < dim; ++i) p.push_back(0.5 + 0.1 * i);
  return p;
}

void curvature_one(Report& r, const std::string& name, const MetricSpec& g, const std::vector<double>& p, double tol,
                   std::optional<bool> expect_flat) {
  if (static_cast<int>(p.size()) != g.dim())
    throw Error(ErrorKind::Dimension, "point has " + std::to_string(p.size()) + " coordinates, metric has " +
                                          std::to_string(g.dim()));
  const auto rep = CurvatureEngine(g).report(p);
  r.at_most(name + ".compatibility", rep.compatibility_residual, 1e-10, P::Identity);
  const double size = rep.max_abs_weyl_cotton / rep.norm_scale;
  const bool flat = size < tol;
  Check c{name + ".conformal_flatness", flat ? Status::Pass : Status::Flagged, size, "< tolerance", tol, P::Identity,
          std::string(g.dim() == 3 ? "Cotton" : "Weyl") + (flat ? " vanishes" : " is nonzero: not conformally flat")};
  r.checks.push_back(c);
  if (expect_flat) r.holds(name + ".expected_verdict", flat == *expect_flat, P::Derived);
}

Report suite_curvature(const SuiteOptions& o) {
  Report r{"curvature", {}, {}};
  const double tol = o.tolerance.value_or(kConformalFlatnessThreshold);
  if (o.metric) {
    const auto g = load_metric(*o.metric);
    curvature_one(r, "metric", g, o.point.value_or(default_point(g.dim())), tol, std::nullopt);
    return r;
  }
  const std::map<std::string, bool> flat{
      {"minkowski3", true}, {"minkowski4", true}, {"hopf3", true}, {"ppwave-x2", false}, {"einstein-static3", true}};
  for (const auto& name : builtin_metric_names()) {
    const auto g = builtin_metric(name);
    curvature_one(r, name, g, o.point && static_cast<int>(o.point->size()) == g.dim() ? *o.point : default_point(g.dim()),
                  tol, flat.at(name));
  }
  // Random points on the flat models.
  Sampler s(o.seed);
  for (const std::string name : {"minkowski4", "hopf3"}) {
    const CurvatureEngine engine(builtin_metric(name));
    double worst = 0;
    for (int i = 0; i < 25; ++i) {
      std::vector<double> p;
      for (int k = 0; k < engine.spec().dim(); ++k) p.push_back(s.uniform_real(-2, 2));
      worst = std::max(worst, engine.report(p).max_abs_weyl_cotton);
    }
    r.at_most(name + ".max_weyl_cotton_random", worst, 1e-10, P::Published);
  }
  return r;
}

// ---------------------------------------------------------------- modelspaces

Report suite_modelspaces(const SuiteOptions& o) {
  Report r{"modelspaces", {}, {}};
  const auto model = HopfModel::make(o.lambda ? parse_rational(*o.lambda) : Rational(2));
  const auto f = so12_triple_fields(model);
  const auto& X = f.matrices.X;
  const auto& Y = f.matrices.Y;
  const auto& Z = f.matrices.Z;
  r.holds("triple.matrix_relations", verify_sl2_triple(f.matrices).ok, P::Published);
  r.holds("triple.field_relations",
          linear_field_bracket(-X, -Y) == -Y && linear_field_bracket(-X, -Z) == Z && linear_field_bracket(-Y, -Z) == -X,
          P::Identity);

  const auto g = HopfModel::metric();
  Sampler s(o.seed);
  double ckv = 0;
  for (int i = 0; i < 10; ++i) {
    std::vector<double> p{s.uniform_real(-2, 2), s.uniform_real(-2, 2), s.uniform_real(-2, 2)};
    for (const auto* a : {&X, &Y, &Z}) ckv = std::max(ckv, conformal_killing_residual(g, f.field_exprs(*a, g), p));
  }
  r.at_most("triple.conformal_killing_residual", ckv, 1e-10, P::Identity);

  const Vec<Rational> e1{1, 0, 0};
  const auto d = conical_stabilizer(model, e1);
  const auto q = HopfModel::form();
  r.holds("conical.f_preserves_form", d.f.transpose() * q * d.f == q, P::Identity);
  r.holds("conical.f_scales_v", d.f.apply(e1) == scale(e1, model.lambda), P::Published);
  r.holds("conical.unipotent_fixes_v", is_zero_vec(d.U_gen.apply(e1)), P::Published);
  r.holds("conical.conjugation", d.f * d.U_gen * inverse(d.f) == d.U_gen * model.lambda, P::Published);

  const auto of = orbit_form({X, Y, Z}, g, {1, 0, 0});
  r.equal("orbit_form.null_cone.stabilizer_dim", static_cast<long long>(of.stabilizer.size()), 1, P::Derived);
  r.equal("orbit_form.null_cone.null", of.null, 1, P::Published);
  r.equal("orbit_form.null_cone.positive", of.positive, 1, P::Derived);

  const auto form = So2nForm::make(4);
  const EinPoint base(form, unit_vector<Rational>(6, 0));
  std::size_t failures = 0;
  for (int i = 0; i < 5; ++i) {
    const auto h = s.orthogonal_element(4);
    const auto moved = ein_act(h, base);
    if (form.eval(moved.representative(), moved.representative()) != 0 || !(ein_act(inverse(h), moved) == base))
      ++failures;
  }
  r.equal("einstein.action_failures", static_cast<long long>(failures), 0, P::Identity);
  return r;
}

// ---------------------------------------------------------------- dynamics

const ExactMatrix& hyperbolic_generator() {
  static const ExactMatrix x{{1, 0, 0}, {0, 0, 0}, {0, 0, -1}};
  return x;
}

HopfModel hopf_from(const SuiteOptions& o) { return HopfModel::make(o.lambda ? parse_rational(*o.lambda) : Rational(2)); }

Point start_from(const SuiteOptions& o) {
  Point x = o.start.value_or(Point{1.5, 0, 0});
  if (x.size() != 3) throw Error(ErrorKind::Dimension, "start point needs 3 coordinates");
  return x;
}

Report suite_lyapunov(const SuiteOptions& o) {
  Report r{"lyapunov", {}, {}};
  const auto model = hopf_from(o);
  const double ln = std::log(model.lambda.get_d());
  const double tol = o.tolerance.value_or(1e-2);
  const double T = o.horizon.value_or(50 * ln), dt = o.step.value_or(ln / 50);
  const auto spec = lyapunov_spectrum(model.flow(hyperbolic_generator()), start_from(o), T, dt);
  const std::vector<double> expected{0, -1, -2};
  for (std::size_t i = 0; i < 3; ++i)
    r.close("exponent_" + std::to_string(i), spec.exponents[i], expected[i], tol, P::Published);
  r.equal("zero_exponents",
          std::count_if(spec.exponents.begin(), spec.exponents.end(), [&](double e) { return std::abs(e) < tol; }), 1,
          P::Published);
  r.holds("converged", spec.converged, P::Identity);
  r.close("flow_direction_exponent", spec.flow_direction_exponent, 0, tol, P::Identity);

  const auto g = HopfModel::renormalized_metric();
  const auto flow = FlowSpec::linear(hyperbolic_generator(), FieldConvention::Paper);
  double worst = 0;
  for (const Point& x : {Point{0.7, 0.2, 0.3}, Point{1.5, -0.4, 0.1}, Point{-2.0, 1.0, 0.5}})
    for (double t : {-0.8, 0.1, 0.4, 1.3}) {
      const double lam = conformal_distortion(flow, g, x, t).lambda;
      worst = std::max(worst, std::abs(lam - std::exp(2 * t)) / std::exp(2 * t));
    }
  r.at_most("distortion_e2t_relative", worst, 1e-6, P::Published);
  return r;
}

Report suite_periodic(const SuiteOptions& o) {
  Report r{"periodic", {}, {}};
  const auto model = hopf_from(o);
  const double tol = o.tolerance.value_or(1e-8);
  const auto flow = model.flow(hyperbolic_generator());
  const Point x0 = start_from(o);
  const auto po = find_periodic(flow, x0, default_transversal(flow, x0));
  r.close("period", po.period, std::log(model.lambda.get_d()), tol, P::Published);
  r.at_most("closure_residual", po.closure_residual, 1e-10, P::Identity);
  r.holds("orbit_on_nullcone", on_nullcone(po.point, 1e-10), P::Derived);
  return r;
}

// ---------------------------------------------------------------- holonomy

void holonomy_normalize(Report& r, const SuiteOptions& o) {
  const Rational lam = o.lambda ? parse_rational(*o.lambda) : Rational(1, 2);
  Sampler s(o.seed);
  for (int n : sweep(o, 3, 5)) {
    Vec<Rational> z = s.rational_vector(static_cast<std::size_t>(n));
    z.front() = 0;
    const auto t = s.rational_vector(static_cast<std::size_t>(n - 2));
    const auto ph = hyperbolic_diagonal(lam, n) * exp_g_beta(t, n) * exp_g1(z, n);
    const auto res = normalize_hyperbolic(decompose_P(ph, n), lam);
    r.holds(tag("normalize.reaches_diagonal", n), res.result == hyperbolic_diagonal(lam, n), P::Published);
    r.holds(tag("normalize.conjugators_in_root_subgroups", n),
            res.p_beta == exp_g_beta(res.T0, n) && res.p_1 == exp_g1(res.Z1, n), P::Identity);
    r.holds(tag("normalize.conjugation", n),
            res.p_1 * res.p_beta * ph * inverse(res.p_1 * res.p_beta) == hyperbolic_diagonal(lam, n), P::Identity);
  }
}

void holonomy_jordan(Report& r, const SuiteOptions& o) {
  Sampler s(o.seed);
  std::size_t exact = 0, failures = 0, total = 0;
  double worst = 0;
  for (int n : sweep(o, 3, 5))
    for (int i = 0; i < 4; ++i) {
      const auto p = s.parabolic_element(n);
      const auto j = jordan_in_P(decompose_P(p, n));
      ++total;
      if (!j.exact) {
        worst = std::max(worst, j.residual);
        continue;
      }
      ++exact;
      if (!(j.h * j.u * j.e == p && j.h * j.u == j.u * j.h && j.h * j.e == j.e * j.h && j.u * j.e == j.e * j.u))
        ++failures;
    }
  r.equal("jordan.exact_failures", static_cast<long long>(failures), 0, P::Identity);
  r.at_most("jordan.float_residual", worst, 1e-9, P::Identity).note =
      std::to_string(exact) + " of " + std::to_string(total) + " samples exact";
}

void holonomy_obstruction(Report& r, const SuiteOptions& o) {
  for (int n : sweep(o, 3, 6)) {
    bool ok = true;
    for (const Rational& mu : {Rational(0), Rational(1), Rational(-2, 3), Rational(5, 2)}) {
      const auto ob = unipotent_obstruction(mu, n);
      const bool zero = ob.residual.is_zero();
      ok = ok && zero == (mu == 0) && ob.coefficient && *ob.coefficient == -mu * ob.b_theta;
    }
    r.holds(tag("obstruction.zero_iff_mu_zero", n), ok, P::Published);
  }
}

Report suite_holonomy(const SuiteOptions& o) {
  Report r{"holonomy", {}, {}};
  const auto& m = o.holonomy_mode;
  if (m != "all" && m != "normalize" && m != "jordan" && m != "obstruction")
    throw Error(ErrorKind::Domain, "unknown holonomy mode '" + m + "'");
  if (m == "all" || m == "normalize") holonomy_normalize(r, o);
  if (m == "all" || m == "jordan") holonomy_jordan(r, o);
  if (m == "all" || m == "obstruction") holonomy_obstruction(r, o);
  return r;
}

// ---------------------------------------------------------------- centralizer

Report suite_centralizer(const SuiteOptions& o) {
  Report r{"centralizer", {}, {}};
  Sampler s(o.seed);
  for (int n : sweep(o, 2 * o.k, 2 * o.k + 2)) {
    const auto f = standard_embedding(o.k, n);
    r.equal(tag("homomorphism_failures", n), static_cast<long long>(homomorphism_failures(f)), 0, P::Identity);
    r.holds(tag("cartan_compatible", n), cartan_compatible(f), P::Identity);
    const auto cb = centralizer_algebra(f.images, n);
    const auto dim = static_cast<long long>(cb.basis.size());
    r.equal(tag("dimension", n), dim, static_cast<long long>(expected_centralizer_dimension(o.k, n)), P::Derived);
    r.holds(tag("elliptic", n), ellipticity_report(cb).all_elliptic, P::Published);
    std::size_t bad = 0;
    for (int i = 0; i < o.conjugations; ++i) {
      const auto g = conjugate_embedding(f, s.orthogonal_element(n, 3));
      const auto cg = centralizer_algebra(g.images, n);
      if (static_cast<long long>(cg.basis.size()) != dim || !ellipticity_report(cg).all_elliptic) ++bad;
    }
    r.equal(tag("conjugation_failures", n), static_cast<long long>(bad), 0, P::Identity);
  }
  return r;
}

using SuiteFn = std::function<Report(const SuiteOptions&)>;

const std::map<std::string, SuiteFn>& registry() {
  static const std::map<std::string, SuiteFn> r{
      {"liealg", suite_liealg},       {"repclass", suite_repclass},   {"curvature", suite_curvature},
      {"modelspaces", suite_modelspaces}, {"lyapunov", suite_lyapunov}, {"periodic", suite_periodic},
      {"holonomy", suite_holonomy},   {"centralizer", suite_centralizer},
  };
  return r;
}

Report run_all(const SuiteOptions& o) {
  std::vector<std::pair<std::string, std::future<Report>>> jobs;
  for (const auto& name : suite_names())
    jobs.emplace_back(name, std::async(std::launch::async, [&o, name] { return registry().at(name)(o); }));
  Report all{"all", {}, {}};
  for (auto& [name, job] : jobs) {
    try {
      all.merge(job.get());
    } catch (const std::exception& e) {
      all.error(name + ".error", e.what());
    }
  }
  return all;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : registry()) v.push_back(k);
    return v;
  }();
  return names;
}

bool is_suite(const std::string& name) { return name == "all" || registry().count(name) > 0; }

Report run_suite(const std::string& name, const SuiteOptions& options) {
  if (!is_suite(name)) throw Error(ErrorKind::Domain, "unknown suite '" + name + "'");
  const auto t0 = std::chrono::steady_clock::now();
  Report r = name == "all" ? run_all(options) : registry().at(name)(options);
  r.duration = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.sort_checks();
  return r;
}

}  // namespace conflab::tools
