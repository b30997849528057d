#ifndef ISINGTREE_SUM_DISTRIBUTION_HPP
#define ISINGTREE_SUM_DISTRIBUTION_HPP

#include <cstddef>
#include <functional>
#include <vector>

#include "isingtree/complex.hpp"
#include "isingtree/model.hpp"
#include "isingtree/pmf.hpp"

namespace isingtree {

/// Negative pmf entries beyond this magnitude abort with ToleranceExceeded
/// instead of being clipped; round-off from the transform sits orders of
/// magnitude below, so anything larger indicates a recursion bug.
inline constexpr double kPmfClipTolerance = 1e-9;

/// pmf of K = sum of the components, computed as the inverse transform of
/// the sum pgf evaluated at the unit-circle nodes. O(n d + n log n).
///
/// n_fft must be a power of two exceeding d; 0 picks the smallest such.
/// K never exceeds d, so larger transforms change nothing but cost; pass
/// a large fixed length (say 2^13) explicitly to pin one across runs.
Pmf sum_pmf(const MeanParamIsing& model, std::size_t n_fft = 0);

/// Expected allocations E[J_v 1{K=k}] of one vertex, k = 0..d.
struct AllocationVector {
  Vertex vertex;
  std::vector<double> values;
};

AllocationVector expected_allocations(const MeanParamIsing& model, Vertex v,
                                      std::size_t n_fft = 0);

/// E[(X - z)_+] for a distribution on {0,...,n-1}.
double stop_loss(const Pmf& p, double z);

/// Total variation distance: half the L1 distance, supports zero-padded to a
/// common length.
double tv_distance(const Pmf& p, const Pmf& q);

/// One pure generating-function evaluation at a complex node.
using NodeEvaluator = std::function<Cx(Cx)>;

/// Shared transform driver: evaluates a generating function on every node of
/// a length-n plan and returns the inverse transform's real parts. The
/// function must have real coefficients (evaluations at conjugate nodes are
/// mirrored rather than recomputed). Each worker thread obtains its own
/// evaluator from the factory, so evaluators may carry mutable scratch.
/// `per_node_cost` (roughly d) gates whether threads are worth spawning.
std::vector<double> pmf_from_pgf(std::size_t n,
                                 const std::function<NodeEvaluator()>& make_evaluator,
                                 std::size_t per_node_cost);

/// Smallest power of two strictly greater than d.
std::size_t default_transform_length(std::size_t d);

}  // namespace isingtree

#endif  // ISINGTREE_SUM_DISTRIBUTION_HPP
