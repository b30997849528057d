#ifndef ISINGTREE_SAMPLER_HPP
#define ISINGTREE_SAMPLER_HPP

#include <cstdint>
#include <vector>

#include "isingtree/model.hpp"
#include "isingtree/pmf.hpp"
#include "isingtree/rng.hpp"

namespace isingtree {

enum class SampleMethod { direct, symmetric_flip };

/// One realization (indexed by vertex), drawn down the tree: the root from
/// its marginal, every other vertex from its conditional given the parent's
/// realized bit. Exactly one uniform draw is consumed per vertex.
std::vector<std::uint8_t> sample_ising(const MeanParamIsing& model, RngStream& rng);

/// Flip-propagation sampler for the symmetric case q = 0.5 everywhere: each
/// non-root copies its parent's bit with probability (alpha+1)/2 and flips it
/// otherwise. Throws NotSymmetricModel when any mean differs from 0.5.
std::vector<std::uint8_t> sample_symmetric_flip(const MeanParamIsing& model,
                                                RngStream& rng);

/// Batch of realizations: rows are replications, columns are vertices in the
/// model's topological order. Replication r is drawn from stream
/// (seed, first_stream + r), so the batch is reproducible bit for bit no
/// matter how the work is scheduled.
struct SampleBatch {
  std::uint64_t seed = 0;
  std::uint64_t first_stream = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint8_t> bits;  // row-major

  std::uint8_t at(std::size_t row, std::size_t col) const {
    return bits[row * cols + col];
  }
};

SampleBatch sample_batch(const MeanParamIsing& model, std::size_t n,
                         std::uint64_t seed, std::uint64_t first_stream = 0,
                         SampleMethod method = SampleMethod::direct);

/// Empirical pmf of K over n draws from the given stream.
Pmf monte_carlo_sum_pmf(const MeanParamIsing& model, std::size_t n, RngStream& rng);

struct KInterval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Per-k confidence intervals for the pmf of K: `reps` independent
/// Monte-Carlo estimates of n draws each, then empirical quantiles at
/// (1 -/+ level)/2 across replications (inverse empirical cdf, so two
/// replications give the min/max envelope). Replication r uses stream
/// rng.stream() + r of rng.seed().
std::vector<KInterval> mc_confidence_intervals(const MeanParamIsing& model,
                                               std::size_t n, std::size_t reps,
                                               double level, const RngStream& rng);

}  // namespace isingtree

#endif  // ISINGTREE_SAMPLER_HPP
