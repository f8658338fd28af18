#include <benchmark/benchmark.h>

#include "udn/econ.hpp"
#include "udn/optimize.hpp"
#include "udn/se.hpp"
#include "udn/sim.hpp"
#include "udn/special.hpp"

namespace {

void BM_Hyp2f1(benchmark::State& state) {
  const double z = state.range(0) / 100.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(udn::special::hyp2f1_11c(0.5, z));
  }
}
BENCHMARK(BM_Hyp2f1)->Arg(30)->Arg(90)->Arg(99);

void BM_RhoZero(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(udn::se::rho_zero_quadrature(4.0));
  }
}
BENCHMARK(BM_RhoZero);

void BM_RhoT(benchmark::State& state) {
  const double t = state.range(0) / 10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(udn::se::rho_t(t, 4.0));
  }
}
BENCHMARK(BM_RhoT)->Arg(1)->Arg(20)->Arg(100);

void BM_SeExact(benchmark::State& state) {
  const udn::NetworkParams params{state.range(0) / 100.0, 0.02, 4.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(udn::se::se_exact(params).value);
  }
}
BENCHMARK(BM_SeExact)->Arg(10)->Arg(100);

void BM_SeLowerBound(benchmark::State& state) {
  const udn::NetworkParams params{0.5, 0.02, 4.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(udn::se::se_lower_bound(params).value);
  }
}
BENCHMARK(BM_SeLowerBound);

void BM_MonteCarloTrial(benchmark::State& state) {
  const udn::NetworkParams params{0.2, 0.02, 4.0};
  udn::sim::SimConfig cfg;
  cfg.trials = static_cast<std::size_t>(state.range(0));
  cfg.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(udn::sim::estimate_se(params, cfg).mean);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarloTrial)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_ClosedFormPlan(benchmark::State& state) {
  const udn::DemandModel demand{10.0};
  const udn::CostParams costs{0.1, 0.1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        udn::econ::closed_form_plan(udn::Regime::UltraDense, 1.0, 4.0, demand, costs));
  }
}
BENCHMARK(BM_ClosedFormPlan);

void BM_NumericPlan(benchmark::State& state) {
  const udn::DemandModel demand{10.0};
  const udn::CostParams costs{0.1, 0.1};
  udn::econ::OptimizerConfig opt;
  opt.grid_points = 12;
  opt.multistarts = 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(udn::econ::numeric_optimize_plan(
        udn::econ::Objective::SparseApproxLinear, 1.0, 4.0, demand, costs, opt));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_NumericPlan)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
