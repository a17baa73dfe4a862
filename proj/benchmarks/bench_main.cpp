#include <benchmark/benchmark.h>

#include <vector>

#include "robsub/bounds.hpp"
#include "robsub/functions.hpp"
#include "robsub/oracle.hpp"
#include "robsub/robust_max.hpp"
#include "robsub/robust_min.hpp"
#include "robsub/rng.hpp"

namespace {

using namespace robsub;

SetFunctionHandle clustered(int n, int clusters, Rng& rng) {
  std::vector<int> assign(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) assign[static_cast<std::size_t>(j)] = j % clusters;
  std::vector<std::vector<int>> parts(static_cast<std::size_t>(clusters));
  for (int j = 0; j < n; ++j)
    parts[static_cast<std::size_t>(assign[static_cast<std::size_t>(j)])].push_back(j);
  return build_function(FunctionSpec::clustered_sqrt(rng.uniform_vector(n, 0.1, 2.0), parts),
                        GroundSet(n));
}

void BM_LovaszEval(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(1);
  SetFunctionHandle f = clustered(n, 5, rng);
  std::vector<double> x = rng.uniform_vector(n, 0.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(lovasz(f, x).value);
}
BENCHMARK(BM_LovaszEval)->Arg(50)->Arg(200);

void BM_Supergradient(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(2);
  SetFunctionHandle f = clustered(n, 5, rng);
  ElementSet anchor = rng.random_subset(n);
  for (auto _ : state)
    benchmark::DoNotOptimize(supergradient(f, anchor, SupergradientVariant::Grow));
}
BENCHMARK(BM_Supergradient)->Arg(50)->Arg(200);

void BM_GreedyCover(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(3);
  std::vector<std::vector<int>> cover(static_cast<std::size_t>(n));
  const int items = n;
  for (int j = 0; j < n; ++j) {
    cover[static_cast<std::size_t>(j)].push_back(j % items);
    for (int it = 0; it < items; ++it)
      if (rng.bernoulli(0.1)) cover[static_cast<std::size_t>(j)].push_back(it);
  }
  SetFunctionHandle g = build_function(
      FunctionSpec::coverage(cover, std::vector<double>(static_cast<std::size_t>(items), 1.0)),
      GroundSet(n));
  const double target = 0.8 * g.value_of_full();
  const std::vector<double> unit(static_cast<std::size_t>(n), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(greedy_cover(g, target, unit));
}
BENCHMARK(BM_GreedyCover)->Arg(50)->Arg(200);

void BM_MMinSolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(4);
  std::vector<SetFunctionHandle> fs;
  for (int i = 0; i < 3; ++i) fs.push_back(clustered(n, 5, rng));
  ConstraintFamily c = ConstraintFamily::cardinality_lower(n, n / 5);
  for (auto _ : state) benchmark::DoNotOptimize(mmin_robust_submin(fs, c).worst_value);
}
BENCHMARK(BM_MMinSolve)->Arg(50)->Arg(100);

void BM_BruteForceOracle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(5);
  std::vector<SetFunctionHandle> fs = {clustered(n, 3, rng), clustered(n, 3, rng)};
  ConstraintFamily c = ConstraintFamily::cardinality_lower(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_min_max(fs, c).value);
}
BENCHMARK(BM_BruteForceOracle)->Arg(12)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
