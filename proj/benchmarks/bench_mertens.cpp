#include <benchmark/benchmark.h>

#include "selmer/analysis.hpp"
#include "selmer/mertens.hpp"
#include "selmer/tau.hpp"

using namespace selmer;

static void BM_SweepZeta(benchmark::State& state) {
  const auto f = SelbergInstance::zeta();
  const std::vector<double> xs = {static_cast<double>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(sweep_prime_sums(f, xs));
}
BENCHMARK(BM_SweepZeta)->Arg(10'000'000)->Arg(100'000'000)->Unit(benchmark::kMillisecond);

static void BM_SweepDedekind(benchmark::State& state) {
  const auto f = SelbergInstance::dedekind_quadratic(-4);
  const std::vector<double> xs = {1e7};
  for (auto _ : state) benchmark::DoNotOptimize(sweep_prime_sums(f, xs));
}
BENCHMARK(BM_SweepDedekind)->Unit(benchmark::kMillisecond);

static void BM_SweepRankinDelta(benchmark::State& state) {
  auto t = std::make_shared<const CoefficientTable>(delta_coefficients(100'000));
  const auto f = SelbergInstance::rankin_selberg(t, t);
  const std::vector<double> xs = {1e5};
  for (auto _ : state) benchmark::DoNotOptimize(sweep_prime_sums(f, xs));
}
BENCHMARK(BM_SweepRankinDelta)->Unit(benchmark::kMillisecond);

static void BM_TauTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(tau_table(static_cast<std::uint64_t>(state.range(0))));
}
BENCHMARK(BM_TauTable)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

static void BM_ConstantM1(benchmark::State& state) {
  const auto f = SelbergInstance::zeta();
  for (auto _ : state) benchmark::DoNotOptimize(mertens_constant_M1(f, 0.2614972128476428, 1e7, 1e7));
}
BENCHMARK(BM_ConstantM1)->Unit(benchmark::kMillisecond);

static void BM_ZetaEM(benchmark::State& state) {
  double t = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(zeta_em(cplx(1.1, t)));
    t += 0.37;
    if (t > 100) t = 0;
  }
}
BENCHMARK(BM_ZetaEM);

BENCHMARK_MAIN();
