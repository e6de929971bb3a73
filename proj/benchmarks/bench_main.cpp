#include <benchmark/benchmark.h>

#include "bis/region_binary.hpp"
#include "bis/region_discrete.hpp"
#include "bis/region_gaussian.hpp"
#include "bis/rng.hpp"
#include "bis/simulator.hpp"

namespace {

using namespace bis;

DiscreteBIS random_model(std::mt19937_64& gen, std::size_t nx, std::size_t ny,
                         std::size_t nz) {
  const auto channel = [&](std::size_t rows, std::size_t cols) {
    std::vector<double> data;
    for (std::size_t r = 0; r < rows; ++r) {
      const auto row = rng::dirichlet_uniform(cols, gen);
      data.insert(data.end(), row.begin(), row.end());
    }
    return ChannelMatrix(rows, cols, std::move(data));
  };
  return DiscreteBIS(ProbVector(rng::dirichlet_uniform(nx, gen)),
                     channel(nx, ny), channel(nx, nz));
}

void BM_BinaryPoint(benchmark::State& state) {
  double g = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(binary_point(g, 0.03, 0.1));
    g += 1e-4;
    if (g > 0.5) g = 0.0;
  }
}
BENCHMARK(BM_BinaryPoint);

void BM_BoundarySweep513(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        boundary_sweep(0.03, 0.1, 0.2, 0.0, RcRule::full_izu, 513));
  }
}
BENCHMARK(BM_BoundarySweep513);

void BM_GaussianSweep256(benchmark::State& state) {
  const GaussianBIS g(0.9, 0.8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        gaussian_sweep(g, 0.2, 0.0, RcRule::half_izu, 256));
  }
}
BENCHMARK(BM_GaussianSweep256);

void BM_RegionBounds(benchmark::State& state) {
  auto gen = rng::substream(1, 0);
  const std::size_t a = state.range(0);
  const DiscreteBIS bis = random_model(gen, a, a, a);
  std::vector<double> table;
  for (std::size_t y = 0; y < a; ++y) {
    const auto row = rng::dirichlet_uniform(a + 2, gen);
    table.insert(table.end(), row.begin(), row.end());
  }
  const TestChannel test(ChannelMatrix(a, a + 2, table));
  for (auto _ : state) {
    benchmark::DoNotOptimize(region_bounds(bis, test, Unit::bits));
  }
}
BENCHMARK(BM_RegionBounds)->Arg(2)->Arg(4);

void BM_MglCheck(benchmark::State& state) {
  auto gen = rng::substream(2, 0);
  std::vector<double> table;
  for (std::size_t y = 0; y < 2; ++y) {
    const auto row = rng::dirichlet_uniform(4, gen);
    table.insert(table.end(), row.begin(), row.end());
  }
  const TestChannel test(ChannelMatrix(2, 4, table));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mgl_check(0.03, 0.1, test));
  }
}
BENCHMARK(BM_MglCheck);

void BM_MonteCarloTrial(benchmark::State& state) {
  SimConfig cfg;
  cfg.n = state.range(0);
  cfg.m_i = 2;
  cfg.m_m = cfg.n == 4 ? 8 : 256;
  cfg.epsilon = 1.5;
  cfg.seed = 7;
  cfg.trials = 64;
  const DiscreteBIS bis = binary_to_discrete(BinaryBIS(0.03, 0.1));
  const TestChannel test = bsc_test_channel(0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_monte_carlo(cfg, bis, test));
  }
  state.SetItemsProcessed(state.iterations() * cfg.trials);
}
BENCHMARK(BM_MonteCarloTrial)->Arg(4)->Arg(12);

void BM_SearchRestart(benchmark::State& state) {
  const DiscreteBIS bis = binary_to_discrete(BinaryBIS(0.03, 0.1));
  const RateQuery q(0.45, 0.0, 0.0, 10.0, 10.0, 0.0, Unit::bits);
  SearchConfig cfg;
  cfg.restarts = 1;
  cfg.steps = 100;
  for (auto _ : state) {
    benchmark::DoNotOptimize(search_test_channel(bis, q, cfg));
    ++cfg.seed;
  }
}
BENCHMARK(BM_SearchRestart);

}  // namespace

BENCHMARK_MAIN();
