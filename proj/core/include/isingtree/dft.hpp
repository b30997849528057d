#ifndef ISINGTREE_DFT_HPP
#define ISINGTREE_DFT_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "isingtree/complex.hpp"

namespace isingtree {

/// Radix-2 discrete Fourier transform over power-of-two lengths.
///
/// Convention (pinned, bit-level): the forward transform uses the
/// negative-exponent kernel, X[k] = sum_j x[j] exp(-2*pi*i*j*k/n), and the
/// inverse divides by n. Consequently the forward transform of the unit
/// impulse at index 1 yields the evaluation nodes w^l = exp(-2*pi*i*l/n) on
/// the unit circle, and inverse(forward(x)) == x up to round-off.
class DftPlan {
 public:
  explicit DftPlan(std::size_t n);  // throws LengthNotPowerOfTwo

  std::size_t length() const { return n_; }

  void forward(std::span<Cx> x) const;
  void inverse(std::span<Cx> x) const;

  /// The n unit-circle nodes w^l defined above.
  std::vector<Cx> nodes() const;

 private:
  std::size_t n_;
  std::vector<Cx> twiddle_;  // exp(-2*pi*i*j/n) for j < n/2

  void transform(std::span<Cx> x, bool invert) const;
};

}  // namespace isingtree

#endif  // ISINGTREE_DFT_HPP
