#ifndef ISINGTREE_TREE_HPP
#define ISINGTREE_TREE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace isingtree {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// An undirected tree on vertices {0, ..., d-1}: exactly d-1 edges, connected,
/// no self-loops, no duplicate edges. Construction validates all of this and
/// throws (SelfLoop, DuplicateEdge, CycleDetected, Disconnected,
/// IndexOutOfRange) naming the offending element.
///
/// External inputs may address vertices by arbitrary string labels; the
/// topology keeps a label table and maps everything to dense 0-based indices,
/// which is what the numeric algorithms consume.
class TreeTopology {
 public:
  /// d = 1 is allowed (single vertex, no edges).
  TreeTopology(Vertex vertex_count, std::vector<Edge> edges,
               std::vector<std::string> labels = {});

  Vertex vertex_count() const { return d_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(Vertex v) const;
  std::optional<Vertex> find_label(const std::string& label) const;

  bool has_edge(Vertex u, Vertex v) const;
  /// Index of edge (u,v) into edges(). Throws NotAnEdge.
  std::size_t edge_index(Vertex u, Vertex v) const;
  const std::vector<Vertex>& neighbors(Vertex v) const;

  /// The unique edge sequence joining u and v, oriented from u towards v.
  /// path(u, u) is empty.
  std::vector<Edge> path(Vertex u, Vertex v) const;

  void check_vertex(Vertex v) const;  // throws IndexOutOfRange

 private:
  Vertex d_;
  std::vector<Edge> edges_;
  std::vector<std::string> labels_;
  std::vector<std::vector<Vertex>> adjacency_;  // neighbor lists, ascending
};

/// A tree plus a chosen root. Exposes the breadth-first topological order
/// (root first, children visited in ascending index order, so every parent
/// precedes its children) and the filiation maps the recursions consume.
class RootedTree {
 public:
  RootedTree(TreeTopology topology, Vertex root);

  const TreeTopology& topology() const { return topology_; }
  Vertex vertex_count() const { return topology_.vertex_count(); }
  Vertex root() const { return root_; }

  /// Topological order; order()[0] == root().
  const std::vector<Vertex>& order() const { return order_; }
  /// Position of v within order().
  std::size_t position(Vertex v) const;

  bool is_root(Vertex v) const { return v == root_; }
  Vertex parent(Vertex v) const;  // throws RootHasNoParent for the root
  const std::vector<Vertex>& children(Vertex v) const;
  /// Index (into topology().edges()) of the edge joining v to its parent.
  std::size_t parent_edge(Vertex v) const;

 private:
  TreeTopology topology_;
  Vertex root_;
  std::vector<Vertex> order_;
  std::vector<std::size_t> position_;
  std::vector<Vertex> parent_;            // parent_[root] unused
  std::vector<std::size_t> parent_edge_;  // likewise
  std::vector<std::vector<Vertex>> children_;
};

/// Dense weighted adjacency view in a rooted tree's topological order:
/// entry (i,j) is the weight of the edge joining order()[i] and order()[j],
/// 1 on the diagonal, 0 elsewhere. For every non-root column the first
/// non-zero off-diagonal row above it is the parent's position.
struct WeightedAdjacency {
  std::size_t d = 0;
  std::vector<double> values;  // row-major d*d

  double at(std::size_t i, std::size_t j) const { return values[i * d + j]; }
};

/// Builds the adjacency view from per-edge weights indexed like
/// topology().edges(). Throws MissingEdgeWeight if the span is short.
WeightedAdjacency weighted_adjacency(const RootedTree& rt,
                                     std::span<const double> edge_weights);

}  // namespace isingtree

#endif  // ISINGTREE_TREE_HPP
