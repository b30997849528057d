#ifndef ISINGTREE_MODEL_HPP
#define ISINGTREE_MODEL_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "isingtree/pmf.hpp"
#include "isingtree/tree.hpp"

namespace isingtree {

/// sqrt(q_u q_v (1-q_u)(1-q_v)); both arguments must lie in the open unit
/// interval.
double sigma(double q_u, double q_v);

/// Open interval of edge correlations keeping all four pair probabilities
/// strictly positive for the given marginal means. Always contains zero.
struct AlphaBounds {
  double lo;
  double hi;
  bool contains(double alpha, double margin = 0.0) const {
    return alpha > lo + margin && alpha < hi - margin;
  }
};

AlphaBounds alpha_bounds(double q_u, double q_v);

struct ValidationIssue {
  enum class Kind { vertex_mean, edge_correlation };
  Kind kind;
  std::size_t index;  // vertex or edge index
  double value;
  double lo = 0.0;    // admissible interval for the offending value
  double hi = 0.0;
  std::string to_string(const TreeTopology& t) const;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  std::string to_string(const TreeTopology& t) const;
};

/// Checks the admissibility constraints for a mean-parameterized model:
/// every mean strictly inside (0,1) and every edge correlation strictly
/// inside its bounds, with a margin excluding the boundary (limit cases put
/// zeros in the joint pmf, which everything downstream assumes away).
ValidationReport validate(const RootedTree& rt, std::span<const double> q,
                          std::span<const double> alpha, double margin = 1e-12);

/// Tree-structured Ising model under mean parameterization: per-vertex
/// Bernoulli means q and per-edge Pearson correlations alpha (indexed like
/// topology().edges()). Immutable once constructed; construction validates
/// and throws DomainError carrying the violation report otherwise.
class MeanParamIsing {
 public:
  MeanParamIsing(RootedTree rt, std::vector<double> q, std::vector<double> alpha);

  const RootedTree& rooted_tree() const { return rt_; }
  const TreeTopology& topology() const { return rt_.topology(); }
  Vertex vertex_count() const { return rt_.vertex_count(); }
  double q(Vertex v) const;
  const std::vector<double>& q() const { return q_; }
  double alpha(std::size_t edge_index) const;
  const std::vector<double>& alpha() const { return alpha_; }
  double alpha_of(Vertex u, Vertex v) const;  // NotAnEdge

  /// Same distribution, conditioning order rebuilt from another root.
  MeanParamIsing rerooted(Vertex new_root) const;

  /// Pr(J_v = x_v | J_parent(v) = x_pa), closed form. v must not be the root.
  double conditional_pmf(Vertex v, int x_v, int x_pa) const;

  /// Pr(J_u = x_u, J_v = x_v) for an edge (u,v).
  double pair_pmf(Vertex u, Vertex v, int x_u, int x_v) const;

  /// Joint probability of a full 0/1 configuration (indexed by vertex).
  double joint_pmf(std::span<const std::uint8_t> x) const;

  /// Pearson correlation between any two components: the product of the edge
  /// correlations along the joining path (1 when u == v).
  double correlation(Vertex u, Vertex v) const;

  /// Exact pmf of K = sum of all components by full enumeration of {0,1}^d.
  /// Deliberately exponential; guarded at d <= 20. Serves as the oracle for
  /// the transform-based path.
  Pmf brute_force_sum_pmf() const;

  /// E[J_v 1{K=k}] for k = 0..d by the same enumeration.
  std::vector<double> brute_force_allocations(Vertex v) const;

 private:
  RootedTree rt_;
  std::vector<double> q_;
  std::vector<double> alpha_;
  // Conditional table per vertex: {Pr(0|0), Pr(1|0), Pr(0|1), Pr(1|1)};
  // the root's slots hold its marginal in the |0 columns.
  std::vector<std::array<double, 4>> cond_;

  void enumerate_check() const;
};

}  // namespace isingtree

#endif  // ISINGTREE_MODEL_HPP
