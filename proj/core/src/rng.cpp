#include "isingtree/rng.hpp"

#include <bit>

namespace isingtree {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Murmur-style variant used for gamma derivation; kept distinct from mix64
// so state and increment sequences decouple.
constexpr std::uint64_t mix64_variant(std::uint64_t z) {
  z = (z ^ (z >> 33)) * 0xff51afd7ed558ccdULL;
  z = (z ^ (z >> 33)) * 0xc4ceb9fe1a85ec53ULL;
  return z ^ (z >> 33);
}

// Odd increment with enough bit diversity (SplittableRandom's mixGamma).
constexpr std::uint64_t mix_gamma(std::uint64_t z) {
  z = mix64_variant(z) | 1ULL;
  const int transitions = std::popcount(z ^ (z >> 1));
  if (transitions < 24) z ^= 0xaaaaaaaaaaaaaaaaULL;
  return z;
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream) {
  const std::uint64_t base = seed + stream * kGoldenGamma;
  state_ = mix64(base);
  gamma_ = mix_gamma(base + kGoldenGamma);
}

std::uint64_t RngStream::next_u64() {
  state_ += gamma_;
  return mix64(state_);
}

double RngStream::next_uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

}  // namespace isingtree
