#include <benchmark/benchmark.h>

#include "samlab/catalog.h"
#include "samlab/harness.h"
#include "samlab/virtual_loss.h"

using namespace samlab;

namespace {

void BM_DetSamStep(benchmark::State& state) {
  auto f = make_sine_example(1.0, 1.0);
  OptimizerConfig cfg;
  cfg.variant = Variant::DetSam;
  cfg.rho = 1.0;
  cfg.eta = 0.5;
  Vec x(0.4);
  for (auto _ : state) {
    auto [next, rec] = det_sam_step(f, x, cfg);
    benchmark::DoNotOptimize(next);
    x = next;
  }
}
BENCHMARK(BM_DetSamStep);

void BM_StochasticStep(benchmark::State& state) {
  auto obj = make_sc_counterexample(CounterexampleParams::strongly_convex(1.0, 5.0, 10.0));
  OptimizerConfig cfg;
  cfg.variant = Variant::MSam;
  cfg.rho = 1.0;
  cfg.eta = 0.06;
  SplitMix64 rng(1);
  Vec x(7.0 / 6.0);
  for (auto _ : state) {
    auto res = stochastic_sam_step(obj, x, cfg, rng);
    benchmark::DoNotOptimize(res.next);
    x = res.next;
    rng = res.rng;
  }
}
BENCHMARK(BM_StochasticStep);

void BM_RunTrajectory(benchmark::State& state) {
  Objective obj;
  obj.det = make_sine_example(1.0, 1.0);
  OptimizerConfig cfg;
  cfg.variant = Variant::DetSam;
  cfg.rho = 1.0;
  cfg.eta = 0.5;
  const long T = state.range(0);
  for (auto _ : state) {
    Trajectory traj = run_trajectory(obj, Vec(0.4), cfg, T, 0, /*record_steps=*/false);
    benchmark::DoNotOptimize(traj);
  }
  state.SetItemsProcessed(state.iterations() * T);
}
BENCHMARK(BM_RunTrajectory)->Arg(1000)->Arg(10000);

void BM_IntegrateVirtualLoss(benchmark::State& state) {
  VirtualGradientMap map{make_sine_example(1.0, 1.0), 1.0, 1e-12};
  for (auto _ : state) {
    auto loss = integrate_virtual_loss(map, -1.5, 1.5, 1e-4);
    benchmark::DoNotOptimize(loss);
  }
}
BENCHMARK(BM_IntegrateVirtualLoss);

}  // namespace

BENCHMARK_MAIN();
