#include <benchmark/benchmark.h>

#include "tnc/barvinok.hpp"
#include "tnc/roots.hpp"
#include "tnc/rng.hpp"
#include "tnc/series.hpp"

#include <random>

namespace {

std::vector<tnc::cplx> random_poly(int degree, std::uint64_t seed) {
  tnc::CounterRng rng(seed, 0);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<tnc::cplx> p(static_cast<std::size_t>(degree + 1));
  for (auto& c : p) c = {g(rng), g(rng)};
  return p;
}

}  // namespace

static void BM_ComposeSeries(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto outer = random_poly(m, 1);
  const auto inner = tnc::PhiEmbedding::make(0.5).series(m);
  for (auto _ : state) benchmark::DoNotOptimize(tnc::compose_series<tnc::cplx>(outer, inner, m));
}
BENCHMARK(BM_ComposeSeries)->RangeMultiplier(2)->Range(4, 64);

static void BM_LogSeries(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  auto g = random_poly(m, 2);
  g[0] = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(tnc::log_series(g, m));
}
BENCHMARK(BM_LogSeries)->RangeMultiplier(2)->Range(4, 64);

static void BM_PhiEmbedding(benchmark::State& state) {
  const double rho = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(tnc::PhiEmbedding::make(rho));
}
BENCHMARK(BM_PhiEmbedding)->Arg(25)->Arg(50)->Arg(90);

static void BM_FindRoots(benchmark::State& state) {
  const auto p = random_poly(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(tnc::find_roots(p));
}
BENCHMARK(BM_FindRoots)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

static void BM_JensenCheck(benchmark::State& state) {
  const auto p = random_poly(8, 4);
  const int nodes = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tnc::jensen_check(p, 1.0, nodes));
}
BENCHMARK(BM_JensenCheck)->Arg(1024)->Arg(4096);
BENCHMARK_MAIN();
