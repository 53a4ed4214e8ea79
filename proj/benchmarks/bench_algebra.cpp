#include <benchmark/benchmark.h>

#include <conflab/centralizer.hpp>
#include <conflab/holonomy.hpp>
#include <conflab/liealg.hpp>
#include <conflab/repclass.hpp>
#include <conflab/sampling.hpp>

using namespace conflab;

static void BM_So2nBasis(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(so2n_basis(n));
}
BENCHMARK(BM_So2nBasis)->DenseRange(3, 8);

static void BM_RootDecompose(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Sampler s(1);
  const auto m = s.so2n_member(n);
  for (auto _ : state) benchmark::DoNotOptimize(root_decompose(m, n));
}
BENCHMARK(BM_RootDecompose)->Arg(4)->Arg(8);

static void BM_KillingForm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<ExactMatrix> basis;
  for (const auto& e : so2n_basis(n)) basis.push_back(e.matrix);
  const CoordinateMap coords(basis);
  Sampler s(2);
  const auto a = s.so2n_member(n), b = s.so2n_member(n);
  for (auto _ : state) benchmark::DoNotOptimize(killing_form(coords, a, b));
}
BENCHMARK(BM_KillingForm)->Arg(3)->Arg(5);

static void BM_InvariantForms(benchmark::State& state) {
  const auto rep = irreducible_rep(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(invariant_symmetric_forms(rep));
}
BENCHMARK(BM_InvariantForms)->DenseRange(2, 6, 2);

static void BM_ClassifyCase(benchmark::State& state) {
  const auto label = all_case_labels()[static_cast<std::size_t>(state.range(0))];
  const int n = 5;
  const auto rep = build_case(label, n);
  const auto form = So2nForm::make(n);
  for (auto _ : state) benchmark::DoNotOptimize(classify_embedding(rep, form));
  state.SetLabel(to_string(label));
}
BENCHMARK(BM_ClassifyCase)->DenseRange(0, 4);

static void BM_JordanInP(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ExactMatrix rot = ExactMatrix::identity(static_cast<std::size_t>(n + 2));
  rot(2, 2) = rot(3, 3) = Rational(3, 5);
  rot(2, 3) = Rational(-4, 5);
  rot(3, 2) = Rational(4, 5);
  const auto p = decompose_P(hyperbolic_diagonal(Rational(1, 2), n) * rot * exp_g1(Vec<Rational>(static_cast<std::size_t>(n), Rational(0)), n), n);
  for (auto _ : state) benchmark::DoNotOptimize(jordan_in_P(p));
}
BENCHMARK(BM_JordanInP)->Arg(4)->Arg(6);

static void BM_NormalizeHyperbolic(benchmark::State& state) {
  const int n = 5;
  const Rational lam(1, 2);
  const auto p = decompose_P(hyperbolic_diagonal(lam, n) * exp_g_beta({1, 2, -1}, n) * exp_g1({0, 3, -1, 5, 2}, n), n);
  for (auto _ : state) benchmark::DoNotOptimize(normalize_hyperbolic(p, lam));
}
BENCHMARK(BM_NormalizeHyperbolic);

static void BM_Centralizer(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto f = standard_embedding(2, n);
  for (auto _ : state) {
    auto cb = centralizer_algebra(f.images, n);
    benchmark::DoNotOptimize(ellipticity_report(cb));
  }
}
BENCHMARK(BM_Centralizer)->DenseRange(4, 6);

BENCHMARK_MAIN();
