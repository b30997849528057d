#include <benchmark/benchmark.h>

#include <vector>

#include "isingtree/model.hpp"
#include "isingtree/pgf.hpp"
#include "isingtree/rng.hpp"
#include "isingtree/sum_distribution.hpp"
#include "isingtree/tree.hpp"

namespace {

using namespace isingtree;

MeanParamIsing chain_model(Vertex d, double q, double alpha) {
  std::vector<Edge> edges;
  edges.reserve(d - 1);
  for (Vertex v = 0; v + 1 < d; ++v) edges.push_back({v, v + 1});
  return MeanParamIsing(RootedTree(TreeTopology(d, std::move(edges)), 0),
                        std::vector<double>(d, q), std::vector<double>(d - 1, alpha));
}

MeanParamIsing random_tree_model(Vertex d, std::uint64_t seed) {
  RngStream rng(seed, 0);
  std::vector<Edge> edges;
  for (Vertex v = 1; v < d; ++v)
    edges.push_back({static_cast<Vertex>(rng.next_u64() % v), v});
  return MeanParamIsing(RootedTree(TreeTopology(d, std::move(edges)), 0),
                        std::vector<double>(d, 0.05), std::vector<double>(d - 1, 0.5));
}

void BM_SumPmfTransform(benchmark::State& state) {
  const Vertex d = static_cast<Vertex>(state.range(0));
  MeanParamIsing model = random_tree_model(d, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sum_pmf(model));
  }
  state.SetComplexityN(d);
}
BENCHMARK(BM_SumPmfTransform)->RangeMultiplier(4)->Range(8, 8192)->Complexity();

void BM_SumPmfBruteForce(benchmark::State& state) {
  const Vertex d = static_cast<Vertex>(state.range(0));
  MeanParamIsing model = random_tree_model(d, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.brute_force_sum_pmf());
  }
}
BENCHMARK(BM_SumPmfBruteForce)->DenseRange(8, 20, 4);

void BM_SumPmfFixedLength(benchmark::State& state) {
  // A large fixed transform length against the minimal one.
  MeanParamIsing model = random_tree_model(64, 7);
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sum_pmf(model, n));
  }
}
BENCHMARK(BM_SumPmfFixedLength)->Arg(128)->Arg(8192);

void BM_JointPgfEvaluation(benchmark::State& state) {
  const Vertex d = static_cast<Vertex>(state.range(0));
  MeanParamIsing model = chain_model(d, 0.01, 0.7);
  PgfEvaluator eval(model);
  auto scratch = eval.make_scratch();
  const Cx node{0.309016994374947, -0.951056516295154};  // a unit-circle node
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval.sum(node, scratch));
  }
  state.SetComplexityN(d);
}
BENCHMARK(BM_JointPgfEvaluation)->RangeMultiplier(10)->Range(100, 100000)->Complexity();

void BM_ExpectedAllocations(benchmark::State& state) {
  const Vertex d = static_cast<Vertex>(state.range(0));
  MeanParamIsing model = random_tree_model(d, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(expected_allocations(model, d / 2));
  }
}
BENCHMARK(BM_ExpectedAllocations)->Arg(16)->Arg(128)->Arg(1024);

}  // namespace
