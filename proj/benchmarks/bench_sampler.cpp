#include <benchmark/benchmark.h>

#include <vector>

#include "isingtree/model.hpp"
#include "isingtree/poisson.hpp"
#include "isingtree/rng.hpp"
#include "isingtree/sampler.hpp"
#include "isingtree/tree.hpp"

namespace {

using namespace isingtree;

MeanParamIsing study_model() {
  TreeTopology tree(7, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}});
  return MeanParamIsing(RootedTree(std::move(tree), 0), std::vector<double>(7, 0.01),
                        std::vector<double>(6, 0.7));
}

MeanParamIsing chain_model(Vertex d) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < d; ++v) edges.push_back({v, v + 1});
  return MeanParamIsing(RootedTree(TreeTopology(d, std::move(edges)), 0),
                        std::vector<double>(d, 0.5), std::vector<double>(d - 1, 0.7));
}

void BM_DirectSampler(benchmark::State& state) {
  const Vertex d = static_cast<Vertex>(state.range(0));
  MeanParamIsing model = chain_model(d);
  RngStream rng(1, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_ising(model, rng));
  }
  state.SetItemsProcessed(state.iterations() * d);
}
BENCHMARK(BM_DirectSampler)->Arg(7)->Arg(100)->Arg(10000);

void BM_SymmetricFlipSampler(benchmark::State& state) {
  const Vertex d = static_cast<Vertex>(state.range(0));
  MeanParamIsing model = chain_model(d);
  RngStream rng(1, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_symmetric_flip(model, rng));
  }
  state.SetItemsProcessed(state.iterations() * d);
}
BENCHMARK(BM_SymmetricFlipSampler)->Arg(7)->Arg(100)->Arg(10000);

void BM_MonteCarloSumPmf(benchmark::State& state) {
  MeanParamIsing model = study_model();
  RngStream rng(1, 0);
  const std::size_t draws = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(monte_carlo_sum_pmf(model, draws, rng));
  }
  state.SetItemsProcessed(state.iterations() * draws);
}
BENCHMARK(BM_MonteCarloSumPmf)->Arg(1000)->Arg(10000);

void BM_MpmrfSampler(benchmark::State& state) {
  MpmrfModel model = build_approx(study_model());
  RngStream rng(1, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_mpmrf(model, rng));
  }
}
BENCHMARK(BM_MpmrfSampler);

void BM_MpmrfSumPmf(benchmark::State& state) {
  MpmrfModel model = build_approx(study_model());
  for (auto _ : state) {
    benchmark::DoNotOptimize(mpmrf_sum_pmf(model));
  }
}
BENCHMARK(BM_MpmrfSumPmf);

}  // namespace
