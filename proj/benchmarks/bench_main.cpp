#include <benchmark/benchmark.h>

#include "nicrob/enumerator.hpp"
#include "nicrob/oracle.hpp"

namespace {

using namespace nicrob;

void BM_SievePrimes(benchmark::State& state) {
  const auto limit = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sieve_primes(limit));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SievePrimes)->Arg(1 << 20)->Arg(1 << 24)->Unit(benchmark::kMillisecond);

void BM_NicolasVerdict(benchmark::State& state) {
  const FactoredNumber n({{2, 4}, {3, 2}, {5, 1}, {7, 2}, {13, 1}, {17, 1}, {11, 2}, {29, 1}});
  for (auto _ : state) benchmark::DoNotOptimize(nicolas_verdict(n));
}
BENCHMARK(BM_NicolasVerdict);

void BM_RobinVerdict(benchmark::State& state) {
  const FactoredNumber n({{2, 4}, {3, 2}, {5, 1}});
  for (auto _ : state) benchmark::DoNotOptimize(robin_verdict(n));
}
BENCHMARK(BM_RobinVerdict);

void BM_AdmissiblePairs(benchmark::State& state) {
  for (auto _ : state) {
    PrimeCatalog catalog(PrimeClassConfig::mod4());
    benchmark::DoNotOptimize(admissible_pairs(catalog, static_cast<std::uint64_t>(state.range(0))));
  }
}
BENCHMARK(BM_AdmissiblePairs)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_EnumerateMod4(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_exceptions(PrimeClassConfig::mod4()));
}
BENCHMARK(BM_EnumerateMod4)->Unit(benchmark::kSecond)->Iterations(1);

void BM_BruteForce(benchmark::State& state) {
  const auto bound = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_exceptions(bound, PrimeClassConfig::mod4()));
}
BENCHMARK(BM_BruteForce)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
