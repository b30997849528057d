#include "isingtree/dft.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "isingtree/errors.hpp"

namespace isingtree {

DftPlan::DftPlan(std::size_t n) : n_(n) {
  if (n == 0 || (n & (n - 1)) != 0)
    throw LengthNotPowerOfTwo("transform length " + std::to_string(n) +
                              " is not a power of two");
  twiddle_.resize(n / 2);
  for (std::size_t j = 0; j < n / 2; ++j) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(j) /
                         static_cast<double>(n);
    twiddle_[j] = {std::cos(angle), std::sin(angle)};
  }
}

void DftPlan::transform(std::span<Cx> x, bool invert) const {
  if (x.size() != n_)
    throw LengthMismatch("sequence length " + std::to_string(x.size()) +
                         " does not match plan length " + std::to_string(n_));
  // Bit-reversal permutation.
  for (std::size_t i = 1, j = 0; i < n_; ++i) {
    std::size_t bit = n_ >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  for (std::size_t len = 2; len <= n_; len <<= 1) {
    const std::size_t stride = n_ / len;
    for (std::size_t i = 0; i < n_; i += len) {
      for (std::size_t j = 0; j < len / 2; ++j) {
        Cx w = twiddle_[j * stride];
        if (invert) w = conj(w);
        const Cx u = x[i + j];
        const Cx v = x[i + j + len / 2] * w;
        x[i + j] = u + v;
        x[i + j + len / 2] = u - v;
      }
    }
  }
  if (invert) {
    const double scale = 1.0 / static_cast<double>(n_);
    for (Cx& v : x) v = scale * v;
  }
}

void DftPlan::forward(std::span<Cx> x) const { transform(x, false); }

void DftPlan::inverse(std::span<Cx> x) const { transform(x, true); }

std::vector<Cx> DftPlan::nodes() const {
  std::vector<Cx> impulse(n_);
  impulse[1 % n_] = Cx{1.0, 0.0};
  forward(impulse);
  return impulse;
}

}  // namespace isingtree
