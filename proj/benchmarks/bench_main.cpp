#include <benchmark/benchmark.h>

#include "tetlab/kijowski.hpp"
#include "tetlab/models.hpp"
#include "tetlab/montecarlo.hpp"
#include "tetlab/tet1d.hpp"

using namespace tetlab;

namespace {

const GaussianPrep1D kFree{-15.0, 1.0, 2.0, 0.5, 1.0, 0.0};
const GaussianPrep1D kFall{-8.0, 9.0, 1.0, 0.5, 1.0, 10.0};

void BM_CrossingTimesFreeFall(benchmark::State& state) {
  const auto fam = freefall_bm_family(kFall, default_window_free_fall(kFall, 0.0));
  double q0 = -9.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(crossing_times(fam, 0.0, q0));
    q0 += 1e-6;
  }
}
BENCHMARK(BM_CrossingTimesFreeFall);

void BM_BranchSumFreeFall(benchmark::State& state) {
  const auto fam = freefall_bm_family(kFall, default_window_free_fall(kFall, 0.0));
  const auto prep = gaussian_preparation(kFall);
  const Grid1D grid(0.0, 4.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(tabulate_flighttime(fam, prep, 0.0, grid, FlightTimeMethod::branch_sum));
}
BENCHMARK(BM_BranchSumFreeFall)->Arg(200)->Arg(600)->Unit(benchmark::kMillisecond);

void BM_KijowskiPoint(benchmark::State& state) {
  KijowskiQuery q;
  q.prep = kFree;
  q.t = 7.5;
  for (auto _ : state) benchmark::DoNotOptimize(kijowski_pdf(q));
}
BENCHMARK(BM_KijowskiPoint)->Unit(benchmark::kMicrosecond);

void BM_CrossingEvents(benchmark::State& state) {
  const auto fam = freefall_bm_family(kFall, default_window_free_fall(kFall, 0.0));
  const auto prep = gaussian_preparation(kFall);
  EnsembleConfig cfg;
  cfg.n_samples = static_cast<std::size_t>(state.range(0));
  cfg.range_lo = 0.0;
  cfg.range_hi = 4.0;
  for (auto _ : state) {
    const auto q0 = sample_initial_positions(kFall, cfg);
    benchmark::DoNotOptimize(crossing_events(fam, q0, 0.0));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CrossingEvents)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
