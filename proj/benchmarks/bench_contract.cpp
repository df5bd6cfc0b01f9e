#include <benchmark/benchmark.h>

#include "tnc/barvinok.hpp"
#include "tnc/ensemble.hpp"
#include "tnc/positive_mc.hpp"
#include "tnc/roots.hpp"
#include "tnc/swallow.hpp"

namespace {

tnc::TensorNetwork gaussian(int L1, int L2, int d) {
  return tnc::sample_gaussian_tn({tnc::cplx{0.5, 0.0}, L1, L2, d, 1});
}

}  // namespace

// args: L2, d on a 2 x L2 torus
static void BM_SwallowContract(benchmark::State& state) {
  const auto tn = gaussian(2, static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const auto plan = tnc::plan_swallowing(tn, tnc::default_order(tn.graph()));
  for (auto _ : state) benchmark::DoNotOptimize(tnc::swallow_contract(tn, plan));
}
BENCHMARK(BM_SwallowContract)->Args({2, 2})->Args({4, 2})->Args({4, 4})->Args({4, 8})->Args({6, 2})->Unit(benchmark::kMicrosecond);

static void BM_ReferenceContract(benchmark::State& state) {
  const auto tn = gaussian(2, static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(tnc::contract_reference(tn));
}
BENCHMARK(BM_ReferenceContract)->Arg(2)->Arg(4)->Unit(benchmark::kMicrosecond);

static void BM_GCoefficients(benchmark::State& state) {
  const auto fam = tnc::make_family(gaussian(2, 4, 4), {}, 1.0);
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tnc::g_coefficients(fam, m));
}
BENCHMARK(BM_GCoefficients)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

static void BM_BarvinokEstimate(benchmark::State& state) {
  const auto fam = tnc::make_family(gaussian(2, 4, 4), {}, 1.0);
  tnc::BarvinokParams p;
  p.m = static_cast<int>(state.range(0));
  p.certify = false;
  for (auto _ : state) benchmark::DoNotOptimize(tnc::barvinok_estimate(fam, p));
}
BENCHMARK(BM_BarvinokEstimate)->Arg(2)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_PositiveMcTrials(benchmark::State& state) {
  const auto tn = tnc::sample_abs_gaussian_tn(tnc::build_torus(2, 3), 2, 1);
  const auto walk = tnc::prepare_walk(tn, tnc::plan_swallowing(tn, tnc::identity_order(6)));
  const auto trials = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tnc::mc_run(walk, trials, 3));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PositiveMcTrials)->Arg(4000)->Arg(40000)->Unit(benchmark::kMillisecond);

static void BM_EnsembleSample(benchmark::State& state) {
  tnc::Corollary14Config cfg;
  cfg.bond_dim = static_cast<int>(state.range(0));
  int s = 0;
  for (auto _ : state) benchmark::DoNotOptimize(tnc::corollary14_sample(cfg, s++));
}
BENCHMARK(BM_EnsembleSample)->Arg(2)->Arg(4)->Unit(benchmark::kMicrosecond);
