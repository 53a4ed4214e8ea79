#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include <conflab/errors.hpp>

#include "conflab_tools/report.hpp"
#include "conflab_tools/suites.hpp"

namespace {

using conflab::tools::Report;
using conflab::tools::SuiteOptions;

struct Output {
  std::string format = "table";
  std::string path;
  bool timing = false;
};

int emit(Report report, const Output& out) {
  if (!out.timing) report.duration.reset();
  const std::string text = out.format == "json" ? conflab::tools::to_json(report).dump(2) + "\n"
                                                : conflab::tools::render_table(report);
  if (out.path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out.path);
    if (!f) {
      std::cerr << "error: cannot write " << out.path << "\n";
      return 2;
    }
    f << text;
  }
  return report.passed() ? 0 : 1;
}

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> p;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      p.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw conflab::Error(conflab::ErrorKind::Domain, "bad coordinate '" + item + "' in point '" + text + "'");
    }
  }
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conflab: conformal Lorentzian geometry checks"};
  app.require_subcommand(1);

  SuiteOptions opt;
  Output out;
  std::optional<double> tol;
  app.add_option("--report", out.format, "Output format")->check(CLI::IsMember({"json", "table"}))->capture_default_str();
  app.add_option("--out", out.path, "Write the report to a file instead of stdout");
  app.add_option("--seed", opt.seed, "Seed for sampled inputs")->capture_default_str();
  app.add_option("--tol", tol, "Override the main tolerance of the suite");
  app.add_flag("--timing", out.timing, "Include the wall-clock duration in the report");

  std::string suite;
  std::optional<int> n;
  std::optional<int> d;
  std::optional<std::string> case_label, metric, point, lambda, start;
  std::optional<double> horizon, step;

  auto* liealg = app.add_subcommand("verify-liealg", "so(2,n) basis, root spaces and grading");
  liealg->add_option("--n", n, "Single n (default 3..8)");

  auto* rep = app.add_subcommand("classify-rep", "Invariant forms of irreducibles and the case classification");
  rep->add_option("--d", d, "Irreducible of dimension d+1");
  rep->add_option("--case", case_label, "Case label 1, 2a, 2b, 3 or 4");
  rep->add_option("--n", n, "Ambient so(2,n)");

  auto* curv = app.add_subcommand("curvature", "Weyl/Cotton tensors and the conformal flatness verdict");
  curv->add_option("--metric", metric, "Builtin name or metric file");
  curv->add_option("--point", point, "Comma separated coordinates");

  auto* models = app.add_subcommand("modelspaces", "Hopf model, conical stabilizer and orbit forms");
  models->add_option("--lambda", lambda, "Hopf ratio (exact, > 1)");

  auto* lyap = app.add_subcommand("lyapunov", "Lyapunov spectrum and conformal distortion of the hyperbolic flow");
  auto* per = app.add_subcommand("periodic", "Periodic orbit of the hyperbolic flow");
  for (auto* sc : {lyap, per}) {
    sc->add_option("--lambda", lambda, "Hopf ratio (exact, > 1, default 2)");
    sc->add_option("--start", start, "Comma separated start point (default 1.5,0,0)");
  }
  lyap->add_option("--T", horizon, "Integration horizon (default 50 ln lambda)");
  lyap->add_option("--dt", step, "Reorthonormalization step (default ln lambda / 50)");

  auto* hol = app.add_subcommand("holonomy", "Hyperbolic normalization, Jordan decomposition, obstruction");
  hol->add_option("mode", opt.holonomy_mode, "normalize, jordan, obstruction or all")
      ->check(CLI::IsMember({"normalize", "jordan", "obstruction", "all"}));
  hol->add_option("--lambda", lambda, "Contraction in (0, 1) (default 1/2)");
  hol->add_option("--n", n, "Single n");

  auto* cent = app.add_subcommand("centralizer", "Centralizer of the su(1,k) embedding");
  cent->add_option("--k", opt.k, "k >= 2")->capture_default_str();
  cent->add_option("--n", n, "Single n >= 2k (default 2k..2k+2)");
  cent->add_option("--conjugations", opt.conjugations, "Random conjugations per n")->capture_default_str();

  auto* all = app.add_subcommand("all", "Every suite");

  auto* run = app.add_subcommand("run", "Run a suite by name");
  run->add_option("suite", suite, "Suite name")->required();

  CLI11_PARSE(app, argc, argv);

  const std::map<CLI::App*, std::string> names{{liealg, "liealg"}, {rep, "repclass"},   {curv, "curvature"},
                                               {models, "modelspaces"}, {lyap, "lyapunov"}, {per, "periodic"},
                                               {hol, "holonomy"},     {cent, "centralizer"}, {all, "all"}};
  try {
    opt.tolerance = tol;
    opt.n = n;
    opt.d = d;
    opt.case_label = case_label;
    opt.metric = metric;
    opt.lambda = lambda;
    opt.horizon = horizon;
    opt.step = step;
    if (point) opt.point = parse_point(*point);
    if (start) opt.start = parse_point(*start);

    std::string name;
    for (const auto& [sc, s] : names)
      if (sc->parsed()) name = s;
    if (run->parsed()) {
      if (!conflab::tools::is_suite(suite)) {
        std::cerr << "error: unknown suite '" << suite << "'; available:";
        for (const auto& s : conflab::tools::suite_names()) std::cerr << " " << s;
        std::cerr << " all\n";
        return 2;
      }
      name = suite;
    }
    return emit(conflab::tools::run_suite(name, opt), out);
  } catch (const conflab::ParseError& e) {
    std::cerr << "error: " << (metric ? *metric + ": " : std::string()) << e.what() << "\n";
    return 2;
  } catch (const conflab::Error& e) {
    std::cerr << "error (" << conflab::to_string(e.kind()) << "): " << e.what() << "\n";
    return 2;
  }
}
