#include "isingtree/tree.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "isingtree/errors.hpp"

namespace isingtree {

namespace {

std::string edge_str(Edge e) {
  return "(" + std::to_string(e.first) + "," + std::to_string(e.second) + ")";
}

// Union-find with path compression; enough for tree validation.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

TreeTopology::TreeTopology(Vertex vertex_count, std::vector<Edge> edges,
                           std::vector<std::string> labels)
    : d_(vertex_count), edges_(std::move(edges)), labels_(std::move(labels)) {
  if (d_ == 0) throw IndexOutOfRange("tree must have at least one vertex");
  if (!labels_.empty() && labels_.size() != d_)
    throw LengthMismatch("label table has " + std::to_string(labels_.size()) +
                         " entries for " + std::to_string(d_) + " vertices");
  if (labels_.empty()) {
    labels_.reserve(d_);
    for (Vertex v = 0; v < d_; ++v) labels_.push_back(std::to_string(v));
  }

  std::set<Edge> seen;
  DisjointSets components(d_);
  for (const Edge& e : edges_) {
    if (e.first >= d_ || e.second >= d_)
      throw IndexOutOfRange("edge " + edge_str(e) + " references a vertex outside [0," +
                            std::to_string(d_) + ")");
    if (e.first == e.second)
      throw SelfLoop("edge " + edge_str(e) + " is a loop");
    Edge canonical{std::min(e.first, e.second), std::max(e.first, e.second)};
    if (!seen.insert(canonical).second)
      throw DuplicateEdge("edge " + edge_str(e) + " appears more than once");
    if (!components.unite(e.first, e.second))
      throw CycleDetected("edge " + edge_str(e) + " closes a cycle");
  }
  if (edges_.size() != static_cast<std::size_t>(d_) - 1) {
    // No cycle was found, so too few edges means some vertex is unreachable.
    throw Disconnected("tree on " + std::to_string(d_) + " vertices needs " +
                       std::to_string(d_ - 1) + " edges, got " +
                       std::to_string(edges_.size()));
  }
  for (Vertex v = 0; v < d_; ++v) {
    if (components.find(v) != components.find(0))
      throw Disconnected("vertex " + std::to_string(v) + " is not reachable from vertex 0");
  }

  adjacency_.assign(d_, {});
  for (const Edge& e : edges_) {
    adjacency_[e.first].push_back(e.second);
    adjacency_[e.second].push_back(e.first);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

void TreeTopology::check_vertex(Vertex v) const {
  if (v >= d_)
    throw IndexOutOfRange("vertex " + std::to_string(v) + " outside [0," +
                          std::to_string(d_) + ")");
}

const std::string& TreeTopology::label(Vertex v) const {
  check_vertex(v);
  return labels_[v];
}

std::optional<Vertex> TreeTopology::find_label(const std::string& label) const {
  for (Vertex v = 0; v < d_; ++v)
    if (labels_[v] == label) return v;
  return std::nullopt;
}

bool TreeTopology::has_edge(Vertex u, Vertex v) const {
  check_vertex(u);
  check_vertex(v);
  const auto& nbrs = adjacency_[u];
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::size_t TreeTopology::edge_index(Vertex u, Vertex v) const {
  check_vertex(u);
  check_vertex(v);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if ((e.first == u && e.second == v) || (e.first == v && e.second == u)) return i;
  }
  throw NotAnEdge("no edge joins " + std::to_string(u) + " and " + std::to_string(v));
}

const std::vector<Vertex>& TreeTopology::neighbors(Vertex v) const {
  check_vertex(v);
  return adjacency_[v];
}

std::vector<Edge> TreeTopology::path(Vertex u, Vertex v) const {
  check_vertex(u);
  check_vertex(v);
  if (u == v) return {};
  // Breadth-first walk from u, then read the unique route back from v.
  std::vector<Vertex> prev(d_, d_);
  std::vector<Vertex> queue{u};
  prev[u] = u;
  for (std::size_t head = 0; head < queue.size() && prev[v] == d_; ++head) {
    Vertex w = queue[head];
    for (Vertex nbr : adjacency_[w]) {
      if (prev[nbr] == d_) {
        prev[nbr] = w;
        queue.push_back(nbr);
      }
    }
  }
  std::vector<Edge> result;
  for (Vertex w = v; w != u; w = prev[w]) result.push_back({prev[w], w});
  std::reverse(result.begin(), result.end());
  return result;
}

RootedTree::RootedTree(TreeTopology topology, Vertex root)
    : topology_(std::move(topology)), root_(root) {
  topology_.check_vertex(root_);
  const Vertex d = topology_.vertex_count();
  order_.reserve(d);
  position_.assign(d, 0);
  parent_.assign(d, d);
  parent_edge_.assign(d, 0);
  children_.assign(d, {});

  order_.push_back(root_);
  for (std::size_t head = 0; head < order_.size(); ++head) {
    Vertex v = order_[head];
    position_[v] = head;
    for (Vertex nbr : topology_.neighbors(v)) {  // ascending, so order is deterministic
      if (nbr == root_ || parent_[nbr] != d) continue;
      parent_[nbr] = v;
      parent_edge_[nbr] = topology_.edge_index(v, nbr);
      children_[v].push_back(nbr);
      order_.push_back(nbr);
    }
  }
}

std::size_t RootedTree::position(Vertex v) const {
  topology_.check_vertex(v);
  return position_[v];
}

Vertex RootedTree::parent(Vertex v) const {
  topology_.check_vertex(v);
  if (v == root_)
    throw RootHasNoParent("vertex " + std::to_string(v) + " is the root");
  return parent_[v];
}

const std::vector<Vertex>& RootedTree::children(Vertex v) const {
  topology_.check_vertex(v);
  return children_[v];
}

std::size_t RootedTree::parent_edge(Vertex v) const {
  topology_.check_vertex(v);
  if (v == root_)
    throw RootHasNoParent("vertex " + std::to_string(v) + " is the root");
  return parent_edge_[v];
}

WeightedAdjacency weighted_adjacency(const RootedTree& rt,
                                     std::span<const double> edge_weights) {
  const auto& edges = rt.topology().edges();
  if (edge_weights.size() < edges.size())
    throw MissingEdgeWeight("got " + std::to_string(edge_weights.size()) +
                            " weights for " + std::to_string(edges.size()) + " edges");
  const std::size_t d = rt.vertex_count();
  WeightedAdjacency a;
  a.d = d;
  a.values.assign(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) a.values[i * d + i] = 1.0;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const std::size_t i = rt.position(edges[e].first);
    const std::size_t j = rt.position(edges[e].second);
    a.values[i * d + j] = edge_weights[e];
    a.values[j * d + i] = edge_weights[e];
  }
  return a;
}

}  // namespace isingtree
