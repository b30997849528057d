#include "isingtree/sum_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <thread>

#include "isingtree/dft.hpp"
#include "isingtree/errors.hpp"
#include "isingtree/pgf.hpp"

namespace isingtree {

namespace {

std::size_t resolve_length(std::size_t n_fft, std::size_t d) {
  if (n_fft == 0) return default_transform_length(d);
  if ((n_fft & (n_fft - 1)) != 0)
    throw LengthNotPowerOfTwo("transform length " + std::to_string(n_fft) +
                              " is not a power of two");
  if (n_fft <= d)
    throw LengthNotPowerOfTwo("transform length " + std::to_string(n_fft) +
                              " must exceed the vertex count " + std::to_string(d));
  return n_fft;
}

void check_allocation_roundoff(std::vector<double>& values) {
  for (double& v : values) {
    if (v < -kPmfClipTolerance)
      throw ToleranceExceeded("allocation entry " + std::to_string(v) +
                              " below the clipping threshold");
    if (v < 0.0) v = 0.0;
  }
}

}  // namespace

std::size_t default_transform_length(std::size_t d) {
  std::size_t n = 1;
  while (n <= d) n <<= 1;
  return n;
}

std::vector<double> pmf_from_pgf(std::size_t n,
                                 const std::function<NodeEvaluator()>& make_evaluator,
                                 std::size_t per_node_cost) {
  const DftPlan plan(n);
  const std::vector<Cx> nodes = plan.nodes();
  std::vector<Cx> values(n);

  // Real coefficients: node n-l is the conjugate of node l.
  const std::size_t half = n / 2;
  const std::size_t jobs = half + 1;

  std::size_t workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  // Only parallelize when there is real work; one evaluation costs ~d.
  if (jobs * std::max<std::size_t>(per_node_cost, 1) < (std::size_t{1} << 22))
    workers = 1;
  workers = std::min(workers, jobs);

  auto run_range = [&](std::size_t begin, std::size_t end) {
    NodeEvaluator eval = make_evaluator();
    for (std::size_t l = begin; l < end; ++l) values[l] = eval(nodes[l]);
  };
  if (workers == 1) {
    run_range(0, jobs);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (jobs + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(jobs, begin + chunk);
      if (begin < end) pool.emplace_back(run_range, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  for (std::size_t l = half + 1; l < n; ++l) values[l] = conj(values[n - l]);

  plan.inverse(values);
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = values[k].re;
  return out;
}

Pmf sum_pmf(const MeanParamIsing& model, std::size_t n_fft) {
  const std::size_t d = model.vertex_count();
  const std::size_t n = resolve_length(n_fft, d);
  const PgfEvaluator shared(model);
  auto make_eval = [&shared]() -> NodeEvaluator {
    auto scratch = std::make_shared<PgfEvaluator::Scratch>(shared.make_scratch());
    return [&shared, scratch](Cx t) { return shared.sum(t, *scratch); };
  };
  return Pmf(pmf_from_pgf(n, make_eval, d), kPmfClipTolerance);
}

AllocationVector expected_allocations(const MeanParamIsing& model, Vertex v,
                                      std::size_t n_fft) {
  const std::size_t d = model.vertex_count();
  const std::size_t n = resolve_length(n_fft, d);
  const MeanParamIsing rerooted =
      model.rooted_tree().root() == v ? model : model.rerooted(v);
  const PgfEvaluator shared(rerooted);
  auto make_eval = [&shared]() -> NodeEvaluator {
    auto scratch = std::make_shared<PgfEvaluator::Scratch>(shared.make_scratch());
    return [&shared, scratch](Cx t) { return shared.sum_root_branch(t, *scratch); };
  };
  std::vector<double> raw = pmf_from_pgf(n, make_eval, d);

  // K <= d, so everything beyond k = d is transform round-off.
  for (std::size_t k = d + 1; k < raw.size(); ++k) {
    if (std::abs(raw[k]) > kPmfClipTolerance)
      throw ToleranceExceeded("allocation mass " + std::to_string(raw[k]) +
                              " beyond the support at k = " + std::to_string(k));
  }
  raw.resize(d + 1);
  check_allocation_roundoff(raw);
  return {v, std::move(raw)};
}

double stop_loss(const Pmf& p, double z) {
  if (z < 0.0) throw DomainError("stop-loss threshold must be nonnegative");
  double s = 0.0;
  for (std::size_t k = p.size(); k-- > 0;) {
    const double excess = static_cast<double>(k) - z;
    if (excess <= 0.0) break;
    s += excess * p[k];
  }
  return s;
}

double tv_distance(const Pmf& p, const Pmf& q) {
  const std::size_t n = std::max(p.size(), q.size());
  double l1 = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double pk = k < p.size() ? p[k] : 0.0;
    const double qk = k < q.size() ? q[k] : 0.0;
    l1 += std::abs(pk - qk);
  }
  return 0.5 * l1;
}

}  // namespace isingtree
