#include "isingtree/pmf.hpp"

#include <cmath>
#include <string>

#include "isingtree/errors.hpp"

namespace isingtree {

Pmf::Pmf(std::vector<double> values, double tolerance)
    : values_(std::move(values)), tolerance_(tolerance) {
  if (values_.empty()) throw ToleranceExceeded("empty probability vector");
  if (tolerance_ < 0.0) throw DomainError("tolerance must be nonnegative");
  double total = 0.0;
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (values_[k] < -tolerance_)
      throw ToleranceExceeded("entry " + std::to_string(k) + " is " +
                              std::to_string(values_[k]) +
                              ", below the clipping threshold");
    if (values_[k] < 0.0) values_[k] = 0.0;
    total += values_[k];
  }
  if (std::abs(total - 1.0) > tolerance_)
    throw ToleranceExceeded("total mass " + std::to_string(total) +
                            " deviates from 1 beyond tolerance");
  for (double& v : values_) v /= total;
}

double Pmf::mean() const {
  double m = 0.0;
  for (std::size_t k = 0; k < values_.size(); ++k) m += static_cast<double>(k) * values_[k];
  return m;
}

double Pmf::variance() const {
  const double m = mean();
  double s = 0.0;
  for (std::size_t k = 0; k < values_.size(); ++k) {
    const double c = static_cast<double>(k) - m;
    s += c * c * values_[k];
  }
  return s;
}

double Pmf::tail_mass(std::size_t k) const {
  double s = 0.0;
  for (std::size_t i = k; i < values_.size(); ++i) s += values_[i];
  return s;
}

}  // namespace isingtree
