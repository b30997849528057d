#ifndef ISINGTREE_PARAM_MAPS_HPP
#define ISINGTREE_PARAM_MAPS_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "isingtree/model.hpp"
#include "isingtree/tree.hpp"

namespace isingtree {

/// Exponential-family parameterization on {0,1}^d:
///   p(x) = exp( sum_v eta_v x_v + sum_(u,v) eta_uv x_u x_v - A ).
/// log_norm holds A, always recomputed from the exponent, never trusted from
/// input.
struct NaturalParamIsing {
  TreeTopology tree;
  std::vector<double> eta_vertex;  // by vertex
  std::vector<double> eta_edge;    // by edge index
  double log_norm = 0.0;           // A(eta), log scale
};

/// Spin-support parameterization, y in {-1,1}^d with y = 2x - 1:
///   p(y) = exp( sum_v theta_v y_v + sum_(u,v) theta_uv y_u y_v - Z ).
/// With no external field (theta_vertex = 0) this is the symmetric model:
/// all means are 1/2 and each edge correlation equals tanh(theta_uv).
struct CanonicalParamIsing {
  TreeTopology tree;
  std::vector<double> theta_vertex;
  std::vector<double> theta_edge;
  double log_norm = 0.0;  // Z(theta), log scale
};

/// Centered parameterization:
///   p(x) = exp( sum_v x_v logit(kappa_v)
///               + sum_(u,v) eta_uv (x_u - kappa_u)(x_v - kappa_v) - B ),
/// kappa strictly inside (0,1)^d.
struct CenteredParamIsing {
  TreeTopology tree;
  std::vector<double> kappa;
  std::vector<double> eta_edge;
  double log_norm = 0.0;  // B(eta, kappa), log scale
};

/// Dense probability table over {0,1}^d; bit v of the index is x_v.
/// Guarded at d <= 20 (about a million states); construction checks strict
/// positivity and unit mass.
class JointTable {
 public:
  JointTable(std::size_t d, std::vector<double> probabilities);

  std::size_t dimension() const { return d_; }
  std::size_t size() const { return probabilities_.size(); }
  double operator[](std::size_t index) const { return probabilities_[index]; }
  const std::vector<double>& values() const { return probabilities_; }

  /// Pr(J_v = 1).
  double marginal(Vertex v) const;
  /// Pr(J_u = 0, J_v = 0).
  double pair_zero_zero(Vertex u, Vertex v) const;

 private:
  std::size_t d_;
  std::vector<double> probabilities_;
};

// All conversions route through the explicit table: a single verified path
// instead of per-pair symbolic mappings (which are intractable in general).
// Everything below is guarded at d <= 20 except centered_to_natural, which
// is a closed-form relabeling of the exponent.

/// Materializes the distribution and stores the recomputed normalizing
/// constant (log scale) on the model record.
JointTable exponential_to_table(NaturalParamIsing& model);
JointTable exponential_to_table(CanonicalParamIsing& model);
JointTable exponential_to_table(CenteredParamIsing& model);

/// Recovers natural parameters from a positive table by Moebius inversion of
/// the log-probabilities. Verifies that every non-edge pair and every
/// higher-order interaction vanishes (|eta_W| < 1e-8); a violation means the
/// table is not Gibbs on this tree and raises NotAnIsingModel.
NaturalParamIsing table_to_natural(const JointTable& table, const TreeTopology& tree);

/// Reads means and edge correlations off a table.
MeanParamIsing table_to_mean(const JointTable& table, const RootedTree& rt);

JointTable mean_to_table(const MeanParamIsing& model);

MeanParamIsing natural_to_mean(NaturalParamIsing& model, Vertex root = 0);
MeanParamIsing canonical_to_mean(CanonicalParamIsing& model, Vertex root = 0);
NaturalParamIsing mean_to_natural(const MeanParamIsing& model);

/// Exponent relabeling: eta_v = logit(kappa_v) - sum_{j in nei(v)} kappa_j eta_vj,
/// identical edge parameters and distribution.
NaturalParamIsing centered_to_natural(const CenteredParamIsing& model);

/// Inverse of the relabeling above: solves the fixed point
/// logit(kappa_v) = eta_v + sum_j eta_vj kappa_j by damped iteration.
/// Throws ConvergenceFailure if the couplings are too strong to settle.
CenteredParamIsing natural_to_centered(const NaturalParamIsing& model);

/// Affine exponent maps between the {0,1} and {-1,1} supports:
/// theta_uv = eta_uv / 4, theta_v = eta_v / 2 + sum_{e at v} eta_e / 4.
CanonicalParamIsing natural_to_canonical(const NaturalParamIsing& model);
NaturalParamIsing canonical_to_natural(const CanonicalParamIsing& model);

}  // namespace isingtree

#endif  // ISINGTREE_PARAM_MAPS_HPP
