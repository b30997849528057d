#ifndef ISINGTREE_PMF_HPP
#define ISINGTREE_PMF_HPP

#include <cstddef>
#include <vector>

namespace isingtree {

/// Finite probability vector over the support {0, ..., n-1}.
///
/// Construction applies an explicit round-off policy: entries below
/// -tolerance raise ToleranceExceeded (naming the index), small negatives are
/// clipped to zero, and the vector is renormalized provided its total mass is
/// within tolerance of one. Nothing is repaired silently beyond that.
class Pmf {
 public:
  Pmf(std::vector<double> values, double tolerance);

  /// For exactly computed vectors (enumeration, empirical counts): applies
  /// the same policy with a round-off-scale tolerance.
  static Pmf from_exact(std::vector<double> values) {
    return Pmf(std::move(values), 1e-12);
  }

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t k) const { return values_[k]; }
  const std::vector<double>& values() const { return values_; }
  double tolerance() const { return tolerance_; }

  double mean() const;
  double variance() const;
  /// Total mass at indices >= k.
  double tail_mass(std::size_t k) const;

 private:
  std::vector<double> values_;
  double tolerance_;
};

}  // namespace isingtree

#endif  // ISINGTREE_PMF_HPP
