#ifndef ISINGTREE_PGF_HPP
#define ISINGTREE_PGF_HPP

#include <span>
#include <vector>

#include "isingtree/complex.hpp"
#include "isingtree/model.hpp"

namespace isingtree {

enum class PgfMode {
  full,             // E[prod_v t_v^{J_v}]
  root_one_branch,  // q_r t_r prod xi: the generating function of the root's
                    // expected allocations
};

/// One evaluation request. Arguments inside the closed unit polydisk
/// (|t_v| <= 1, unit-circle transform nodes included) carry the
/// distributional guarantees; the evaluation itself is a polynomial and is
/// well-defined for any finite argument, which the derivative checks use.
struct PgfRequest {
  const MeanParamIsing* model = nullptr;
  std::span<const Cx> t;
  PgfMode mode = PgfMode::full;
};

Cx evaluate_pgf(const PgfRequest& request);

/// Joint pgf of the model at a per-vertex argument vector (indexed by
/// vertex). A single leaf-to-root pass; O(d) arithmetic and memory.
Cx joint_pgf(const MeanParamIsing& model, std::span<const Cx> t);

/// pgf of K = sum of components: the joint pgf on the diagonal t = (t,...,t).
Cx sum_pgf(const MeanParamIsing& model, Cx t);

/// Generating function of the expected allocations of vertex v,
/// sum_k t^k E[J_v 1{K=k}]. Reroots the model at v internally.
Cx ogfea_pgf(const MeanParamIsing& model, Vertex v, Cx t);

/// Bound evaluator for repeated evaluations against one model (transform
/// loops). Precomputes the traversal and conditional coefficients once; each
/// evaluation is an iterative leaf-to-root pass over flat arrays, so deep
/// chains cannot overflow any call stack. Evaluations against distinct
/// Scratch buffers are safe to run concurrently.
class PgfEvaluator {
 public:
  struct Scratch {
    std::vector<Cx> acc_zeta;
    std::vector<Cx> acc_xi;
  };

  explicit PgfEvaluator(const MeanParamIsing& model);

  Scratch make_scratch() const;

  /// Joint pgf; t indexed by vertex.
  Cx joint(std::span<const Cx> t, Scratch& scratch) const;
  /// pgf of K at scalar t.
  Cx sum(Cx t, Scratch& scratch) const;
  /// Root-branch (allocation) variant of the diagonal evaluation.
  Cx sum_root_branch(Cx t, Scratch& scratch) const;

 private:
  const MeanParamIsing* model_;
  std::size_t d_;
  // Flattened in topological order; entry 0 is the root.
  std::vector<std::size_t> parent_pos_;
  std::vector<Vertex> vertex_at_;
  std::vector<double> c00_, c01_, c10_, c11_;  // conditional tables per position
  double root_q0_, root_q1_;

  Cx run(std::span<const Cx> t, bool diagonal, PgfMode mode, Scratch& scratch) const;
};

}  // namespace isingtree

#endif  // ISINGTREE_PGF_HPP
