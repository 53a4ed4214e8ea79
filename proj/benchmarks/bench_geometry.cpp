#include <benchmark/benchmark.h>

#include <cmath>

#include <conflab/curvature.hpp>
#include <conflab/dynamics.hpp>
#include <conflab/metric.hpp>
#include <conflab/modelspaces.hpp>

using namespace conflab;

namespace {

const ExactMatrix kHyperbolic{{1, 0, 0}, {0, 0, 0}, {0, 0, -1}};

}  // namespace

static void BM_ParseMetric(benchmark::State& state) {
  const auto text = builtin_metric_source("einstein-static3");
  for (auto _ : state) benchmark::DoNotOptimize(parse_metric(text));
}
BENCHMARK(BM_ParseMetric);

static void BM_CurvatureEngineBuild(benchmark::State& state) {
  const auto g = builtin_metric("ppwave-x2");
  for (auto _ : state) benchmark::DoNotOptimize(CurvatureEngine(g));
}
BENCHMARK(BM_CurvatureEngineBuild);

static void BM_CurvatureReport(benchmark::State& state) {
  const CurvatureEngine eng(builtin_metric(state.range(0) ? "ppwave-x2" : "einstein-static3"));
  const std::vector<double> p(static_cast<std::size_t>(eng.spec().dim()), 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(eng.report(p));
}
BENCHMARK(BM_CurvatureReport)->Arg(0)->Arg(1);

static void BM_LyapunovHopf(benchmark::State& state) {
  const auto flow = HopfModel::make(2).flow(kHyperbolic);
  const double ln2 = std::log(2.0);
  for (auto _ : state) benchmark::DoNotOptimize(lyapunov_spectrum(flow, {1.5, 0, 0}, 50 * ln2, ln2 / 50));
}
BENCHMARK(BM_LyapunovHopf)->Unit(benchmark::kMillisecond);

static void BM_ChartFlowRK4(benchmark::State& state) {
  const auto g = HopfModel::metric();
  const auto fields = so12_triple_fields(HopfModel::make(2));
  const auto flow = FlowSpec::chart(fields.field_exprs(fields.matrices.Y, g));
  for (auto _ : state) benchmark::DoNotOptimize(integrate(flow, {0.3, 0.2, 0.1}, 1.0));
}
BENCHMARK(BM_ChartFlowRK4)->Unit(benchmark::kMicrosecond);

static void BM_PeriodicOrbit(benchmark::State& state) {
  const auto flow = HopfModel::make(2).flow(kHyperbolic);
  const auto tr = default_transversal(flow, {1.5, 0, 0});
  for (auto _ : state) benchmark::DoNotOptimize(find_periodic(flow, {1.5, 1e-3, 1e-3}, tr));
}
BENCHMARK(BM_PeriodicOrbit)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
