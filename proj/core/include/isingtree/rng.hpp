#ifndef ISINGTREE_RNG_HPP
#define ISINGTREE_RNG_HPP

#include <cstdint>

namespace isingtree {

/// Deterministic 64-bit generator with explicitly addressable streams,
/// SplitMix64 style: each stream walks its own odd increment ("gamma")
/// derived from (seed, stream), the splittable-generator construction. The
/// same (seed, stream) always reproduces the same draws, and distinct
/// streams may be consumed from different threads without coordination.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  std::uint64_t next_u64();
  /// Uniform on [0,1) with 53 random bits.
  double next_uniform();
  /// One uniform draw compared against p.
  bool bernoulli(double p) { return next_uniform() < p; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t state_;
  std::uint64_t gamma_;
};

}  // namespace isingtree

#endif  // ISINGTREE_RNG_HPP
