#include <benchmark/benchmark.h>

#include "selmer/primes.hpp"

using namespace selmer;

static void BM_CountPrimes(benchmark::State& state) {
  const auto hi = static_cast<std::uint64_t>(state.range(0));
  SieveOptions opts;
  opts.threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    std::uint64_t count = 0;
    for_each_prime_segment(2, hi, opts, [&](std::span<const std::uint64_t> ps) { count += ps.size(); });
    benchmark::DoNotOptimize(count);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(hi));
}
BENCHMARK(BM_CountPrimes)->Args({10'000'000, 1})->Args({100'000'000, 1})->Unit(benchmark::kMillisecond);

static void BM_ParallelSegments(benchmark::State& state) {
  SieveOptions opts;
  opts.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    const auto parts = map_prime_segments<std::uint64_t>(
        2, 100'000'000, opts,
        [](std::span<const std::uint64_t> ps, std::uint64_t, std::uint64_t) { return ps.size(); });
    benchmark::DoNotOptimize(parts.data());
  }
}
BENCHMARK(BM_ParallelSegments)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_Kronecker(benchmark::State& state) {
  std::uint64_t n = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kronecker_symbol(-163, n));
    n += 7919;
  }
}
BENCHMARK(BM_Kronecker);

BENCHMARK_MAIN();
