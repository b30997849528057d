#include "isingtree/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "isingtree/errors.hpp"

namespace isingtree {

std::vector<std::uint8_t> sample_ising(const MeanParamIsing& model, RngStream& rng) {
  const RootedTree& rt = model.rooted_tree();
  std::vector<std::uint8_t> x(model.vertex_count(), 0);
  for (Vertex v : rt.order()) {
    double p1;
    if (rt.is_root(v)) {
      p1 = model.q(v);
    } else {
      p1 = model.conditional_pmf(v, 1, x[rt.parent(v)]);
    }
    x[v] = rng.bernoulli(p1) ? 1 : 0;
  }
  return x;
}

std::vector<std::uint8_t> sample_symmetric_flip(const MeanParamIsing& model,
                                                RngStream& rng) {
  const RootedTree& rt = model.rooted_tree();
  for (Vertex v = 0; v < model.vertex_count(); ++v) {
    if (model.q(v) != 0.5)
      throw NotSymmetricModel("vertex " + rt.topology().label(v) + " has mean " +
                              std::to_string(model.q(v)) +
                              "; the flip representation requires q = 0.5 exactly");
  }
  std::vector<std::uint8_t> x(model.vertex_count(), 0);
  for (Vertex v : rt.order()) {
    if (rt.is_root(v)) {
      x[v] = rng.bernoulli(0.5) ? 1 : 0;
      continue;
    }
    const double beta = 0.5 * (model.alpha(rt.parent_edge(v)) + 1.0);
    const std::uint8_t parent_bit = x[rt.parent(v)];
    x[v] = rng.bernoulli(beta) ? parent_bit : static_cast<std::uint8_t>(1 - parent_bit);
  }
  return x;
}

SampleBatch sample_batch(const MeanParamIsing& model, std::size_t n,
                         std::uint64_t seed, std::uint64_t first_stream,
                         SampleMethod method) {
  const RootedTree& rt = model.rooted_tree();
  const std::size_t d = model.vertex_count();
  SampleBatch batch;
  batch.seed = seed;
  batch.first_stream = first_stream;
  batch.rows = n;
  batch.cols = d;
  batch.bits.resize(n * d);
  for (std::size_t r = 0; r < n; ++r) {
    RngStream rng(seed, first_stream + r);
    const std::vector<std::uint8_t> x = method == SampleMethod::direct
                                            ? sample_ising(model, rng)
                                            : sample_symmetric_flip(model, rng);
    for (std::size_t c = 0; c < d; ++c) batch.bits[r * d + c] = x[rt.order()[c]];
  }
  return batch;
}

Pmf monte_carlo_sum_pmf(const MeanParamIsing& model, std::size_t n, RngStream& rng) {
  if (n == 0) throw DomainError("need at least one draw");
  const std::size_t d = model.vertex_count();
  std::vector<double> counts(d + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = sample_ising(model, rng);
    std::size_t k = 0;
    for (std::uint8_t b : x) k += b;
    counts[k] += 1.0;
  }
  for (double& c : counts) c /= static_cast<double>(n);
  return Pmf::from_exact(std::move(counts));
}

namespace {

// Inverse empirical cdf over a sorted sample: the smallest value with at
// least a fraction p of the sample at or below it. Two replications
// degenerate to the min/max envelope.
double quantile_sorted(const std::vector<double>& sorted, double p) {
  const double np = p * static_cast<double>(sorted.size());
  std::size_t rank = static_cast<std::size_t>(std::ceil(np));
  if (rank == 0) rank = 1;
  if (rank > sorted.size()) rank = sorted.size();
  return sorted[rank - 1];
}

}  // namespace

std::vector<KInterval> mc_confidence_intervals(const MeanParamIsing& model,
                                               std::size_t n, std::size_t reps,
                                               double level, const RngStream& rng) {
  if (reps < 2) throw DomainError("need at least two replications");
  if (!(level > 0.0 && level < 1.0))
    throw DomainError("level must lie strictly inside (0,1)");
  const std::size_t d = model.vertex_count();
  // estimates[k][r]: replication r's estimate of Pr(K = k).
  std::vector<std::vector<double>> estimates(d + 1, std::vector<double>(reps));
  for (std::size_t r = 0; r < reps; ++r) {
    RngStream rep_rng(rng.seed(), rng.stream() + r);
    const Pmf pmf = monte_carlo_sum_pmf(model, n, rep_rng);
    for (std::size_t k = 0; k <= d; ++k) estimates[k][r] = pmf[k];
  }
  std::vector<KInterval> intervals(d + 1);
  const double tail = (1.0 - level) / 2.0;
  for (std::size_t k = 0; k <= d; ++k) {
    std::sort(estimates[k].begin(), estimates[k].end());
    intervals[k] = {quantile_sorted(estimates[k], tail),
                    quantile_sorted(estimates[k], 1.0 - tail)};
  }
  return intervals;
}

}  // namespace isingtree
