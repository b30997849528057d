#ifndef ISINGTREE_POISSON_HPP
#define ISINGTREE_POISSON_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "isingtree/complex.hpp"
#include "isingtree/model.hpp"
#include "isingtree/pmf.hpp"
#include "isingtree/rng.hpp"
#include "isingtree/tree.hpp"

namespace isingtree {

/// Tree Markov random field with common Poisson(lambda) marginals, built by
/// binomial thinning down the tree: the root is Poisson(lambda), every other
/// vertex is alpha o N_parent plus an independent Poisson(lambda (1-alpha))
/// innovation. Thinning probabilities must lie strictly inside (0,1).
class MpmrfModel {
 public:
  MpmrfModel(RootedTree rt, double lambda, std::vector<double> alpha);

  const RootedTree& rooted_tree() const { return rt_; }
  Vertex vertex_count() const { return rt_.vertex_count(); }
  double lambda() const { return lambda_; }
  double alpha(std::size_t edge_index) const { return alpha_[edge_index]; }
  const std::vector<double>& alpha() const { return alpha_; }

 private:
  RootedTree rt_;
  double lambda_;
  std::vector<double> alpha_;
};

/// Approximation target for a common-q Ising model: same tree, same edge
/// parameters, lambda = q. Requires all means equal (within 1e-12) and every
/// correlation strictly inside (0,1); the error bound does not cover
/// anything else, so it is rejected (NotCommonQ, AlphaOutOfRange).
MpmrfModel build_approx(const MeanParamIsing& model);

/// One realization by the thinning construction (indexed by vertex).
std::vector<std::uint32_t> sample_mpmrf(const MpmrfModel& model, RngStream& rng);

/// Pr(N_v = k | N_parent = n_pa): Binomial(n_pa, alpha) convolved with
/// Poisson(lambda (1 - alpha)).
double mpmrf_conditional_pmf(std::uint32_t n_pa, double alpha, double lambda,
                             std::uint32_t k);

/// pgf of M = sum of the components, by a leaf-to-root recursion carrying
/// one (a_v, b_v) pair per vertex:
///   z_v = t prod_{i in ch(v)} b_i,
///   b_v = 1 - alpha_v + alpha_v z_v,
///   a_v = (prod_{i in ch(v)} a_i) exp(lambda (1-alpha_v)(z_v - 1)),
/// and P_M(t) = (prod_{i in ch(r)} a_i) exp(lambda (z_r - 1)) at the root.
/// Entire in t, so real arguments beyond 1 are valid (tail bounds use them).
Cx mpmrf_sum_pgf(const MpmrfModel& model, Cx t);

/// Truncated pmf of M with an explicit account of what the truncation can
/// hide: M is unbounded and the transform folds tail mass back, so the
/// reported error is a Chernoff bound on Pr(M >= n), min_u P_M(u) / u^n.
struct TruncatedPmf {
  Pmf pmf;
  double truncation_error;
};

/// n_fft = 0 picks a power of two covering max(4 d lambda, d) + 64.
/// Throws TruncationTooSevere if the tail bound exceeds 1e-9.
TruncatedPmf mpmrf_sum_pmf(const MpmrfModel& model, std::size_t n_fft = 0);

/// Joint pmf at a count vector, root marginal times conditional factors.
/// Verification-scale only: d <= 6.
double mpmrf_joint_pmf(const MpmrfModel& model, std::span<const std::uint32_t> x);

/// Total-variation bound between the common-q Ising model and its
/// approximation: 1.2 d q^2.
double tv_bound(std::size_t d, double q);

/// Convex-order check between two distributions on {0,1,...}: equal means
/// and uniformly dominated stop-loss transforms, within tolerance.
struct ConvexOrderReport {
  double mean_lhs = 0.0;
  double mean_rhs = 0.0;
  std::vector<double> margins;  // stop_loss(rhs, z) - stop_loss(lhs, z) per integer z
  bool ordered = false;
  double tolerance = 0.0;
};

ConvexOrderReport check_convex_order(const Pmf& lhs, const Pmf& rhs,
                                     double tolerance = 1e-9);

}  // namespace isingtree

#endif  // ISINGTREE_POISSON_HPP
