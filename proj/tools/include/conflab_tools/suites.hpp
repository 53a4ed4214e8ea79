#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "conflab_tools/report.hpp"

namespace conflab::tools {

/// Inputs shared by the suites. Unset fields take per-suite defaults.
struct SuiteOptions {
  std::uint64_t seed = 1;
  /// Overrides the main numerical tolerance of a suite.
  std::optional<double> tolerance;

  /// so(2,n) size; liealg sweeps 3..8, repclass 3..6, centralizer 4..6.
  std::optional<int> n;

  /// repclass: a single irreducible representation or a single case.
  std::optional<int> d;
  std::optional<std::string> case_label;

  /// curvature: builtin name or file path, and an evaluation point.
  std::optional<std::string> metric;
  std::optional<std::vector<double>> point;

  /// Exact ratio as text: the Hopf ratio (default 2) for lyapunov and
  /// periodic, the hyperbolic contraction (default 1/2) for holonomy.
  std::optional<std::string> lambda;
  std::optional<double> horizon;
  std::optional<double> step;
  std::optional<std::vector<double>> start;

  /// holonomy: normalize, jordan, obstruction or all.
  std::string holonomy_mode = "all";

  /// centralizer
  int k = 2;
  int conjugations = 10;
};

/// liealg, repclass, curvature, modelspaces, lyapunov, periodic, holonomy,
/// centralizer.
const std::vector<std::string>& suite_names();

bool is_suite(const std::string& name);

/// Runs one suite, or every suite for "all" (concurrently, merged with the
/// suite name as a check prefix). The duration is always filled; clear it
/// before serializing when byte-stable output is wanted. Throws Error(Domain) for an unknown name;
/// library errors caused by the options propagate.
Report run_suite(const std::string& name, const SuiteOptions& options);

}  // namespace conflab::tools
