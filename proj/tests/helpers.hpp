#ifndef ISINGTREE_TESTS_HELPERS_HPP
#define ISINGTREE_TESTS_HELPERS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "isingtree/model.hpp"
#include "isingtree/rng.hpp"
#include "isingtree/tree.hpp"

namespace isingtree::testing {

/// The numerical study's tree: a complete binary tree of depth two,
/// root 0 with children 1,2, grandchildren 3..6.
inline TreeTopology binary_tree_7() {
  return TreeTopology(7, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}});
}

inline MeanParamIsing study_model(double q, double alpha = 0.7, Vertex root = 0) {
  return MeanParamIsing(RootedTree(binary_tree_7(), root),
                        std::vector<double>(7, q), std::vector<double>(6, alpha));
}

/// Uniform random tree from a random Pruefer sequence.
inline TreeTopology random_tree(Vertex d, RngStream& rng) {
  if (d == 1) return TreeTopology(1, {});
  if (d == 2) return TreeTopology(2, {{0, 1}});
  std::vector<Vertex> prufer(d - 2);
  for (auto& p : prufer) p = static_cast<Vertex>(rng.next_u64() % d);
  std::vector<int> degree(d, 1);
  for (Vertex p : prufer) ++degree[p];
  std::vector<Edge> edges;
  for (Vertex p : prufer) {
    for (Vertex leaf = 0; leaf < d; ++leaf) {
      if (degree[leaf] == 1) {
        edges.push_back({leaf, p});
        --degree[leaf];
        --degree[p];
        break;
      }
    }
  }
  Vertex u = d, v = d;
  for (Vertex w = 0; w < d; ++w) {
    if (degree[w] == 1) (u == d ? u : v) = w;
  }
  edges.push_back({u, v});
  return TreeTopology(d, std::move(edges));
}

/// Admissible model with means drawn from [q_lo, q_hi] and each edge
/// correlation drawn from the middle of its admissible interval.
inline MeanParamIsing random_model(Vertex d, RngStream& rng, double q_lo = 0.05,
                                   double q_hi = 0.95, bool common_q = false,
                                   bool positive_alpha = false) {
  TreeTopology tree = random_tree(d, rng);
  std::vector<double> q(d);
  const double q0 = q_lo + (q_hi - q_lo) * rng.next_uniform();
  for (Vertex v = 0; v < d; ++v)
    q[v] = common_q ? q0 : q_lo + (q_hi - q_lo) * rng.next_uniform();
  std::vector<double> alpha;
  alpha.reserve(tree.edges().size());
  for (const Edge& e : tree.edges()) {
    const AlphaBounds b = alpha_bounds(q[e.first], q[e.second]);
    const double lo = positive_alpha ? 0.0 : b.lo;
    // Stay at 80% of the admissible range to keep probabilities away from 0.
    alpha.push_back(lo + (b.hi - lo) * (0.1 + 0.8 * rng.next_uniform()));
  }
  const Vertex root = static_cast<Vertex>(rng.next_u64() % d);
  return MeanParamIsing(RootedTree(std::move(tree), root), std::move(q),
                        std::move(alpha));
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const double x = i < a.size() ? a[i] : 0.0;
    const double y = i < b.size() ? b[i] : 0.0;
    m = std::max(m, std::abs(x - y));
  }
  return m;
}

}  // namespace isingtree::testing

#endif  // ISINGTREE_TESTS_HELPERS_HPP
