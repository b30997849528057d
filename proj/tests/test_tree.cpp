#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <queue>

#include "helpers.hpp"
#include "isingtree/errors.hpp"
#include "isingtree/tree.hpp"

using namespace isingtree;
using isingtree::testing::binary_tree_7;
using isingtree::testing::random_tree;

TEST_CASE("smallest tree") {
  TreeTopology t(2, {{0, 1}});
  CHECK(t.vertex_count() == 2);
  CHECK(t.has_edge(0, 1));
  CHECK(t.has_edge(1, 0));
}

TEST_CASE("single vertex tree") {
  TreeTopology t(1, {});
  CHECK(t.vertex_count() == 1);
  CHECK(t.path(0, 0).empty());
}

TEST_CASE("the study tree validates") {
  TreeTopology t = binary_tree_7();
  CHECK(t.edges().size() == 6);
  CHECK(t.neighbors(0) == std::vector<Vertex>{1, 2});
  CHECK(t.neighbors(1) == std::vector<Vertex>{0, 3, 4});
}

TEST_CASE("construction errors name the offending element") {
  CHECK_THROWS_AS(TreeTopology(3, {{0, 1}, {1, 2}, {2, 0}}), CycleDetected);
  CHECK_THROWS_AS(TreeTopology(3, {{0, 1}, {1, 1}}), SelfLoop);
  CHECK_THROWS_AS(TreeTopology(3, {{0, 1}, {1, 0}}), DuplicateEdge);
  CHECK_THROWS_AS(TreeTopology(3, {{0, 1}, {1, 5}}), IndexOutOfRange);
  CHECK_THROWS_AS(TreeTopology(4, {{0, 1}, {2, 3}, {1, 2}, {3, 0}}), CycleDetected);
  CHECK_THROWS_AS(TreeTopology(4, {{0, 1}, {2, 3}}), Disconnected);

  try {
    TreeTopology(3, {{0, 1}, {1, 2}, {2, 0}});
  } catch (const CycleDetected& err) {
    CHECK(std::string(err.what()).find("(2,0)") != std::string::npos);
  }
}

TEST_CASE("rooting a path") {
  TreeTopology chain(3, {{0, 1}, {1, 2}});

  RootedTree mid(chain, 1);
  CHECK(mid.order().front() == 1);
  CHECK(mid.children(1) == std::vector<Vertex>{0, 2});
  CHECK(mid.children(0).empty());

  RootedTree end(chain, 0);
  CHECK(end.parent(2) == 1);
  CHECK(end.parent(1) == 0);
  CHECK_THROWS_AS(end.parent(0), RootHasNoParent);
}

TEST_CASE("study tree rooted at a leaf has a depth-4 chain") {
  RootedTree rt(binary_tree_7(), 3);
  CHECK(rt.parent(1) == 3);
  CHECK(rt.parent(0) == 1);
  CHECK(rt.parent(4) == 1);
  CHECK(rt.parent(2) == 0);
  CHECK(rt.parent(5) == 2);
  CHECK(rt.parent(6) == 2);
  CHECK(rt.order() == std::vector<Vertex>{3, 1, 0, 4, 2, 5, 6});
  // 3 -> 1 -> 0 -> 2 -> 5 is a four-edge descent.
  CHECK(rt.topology().path(3, 5).size() == 4);
}

TEST_CASE("paths") {
  TreeTopology chain(3, {{0, 1}, {1, 2}});
  CHECK(chain.path(0, 2) == std::vector<Edge>{{0, 1}, {1, 2}});
  CHECK(chain.path(2, 2).empty());

  TreeTopology t = binary_tree_7();
  CHECK(t.path(3, 5) == std::vector<Edge>{{3, 1}, {1, 0}, {0, 2}, {2, 5}});
  CHECK(t.path(3, 4) == std::vector<Edge>{{3, 1}, {1, 4}});
}

TEST_CASE("weighted adjacency basics") {
  RootedTree single(TreeTopology(1, {}), 0);
  WeightedAdjacency a1 = weighted_adjacency(single, {});
  CHECK(a1.at(0, 0) == 1.0);

  RootedTree pair(TreeTopology(2, {{0, 1}}), 0);
  const double w[] = {0.7};
  WeightedAdjacency a2 = weighted_adjacency(pair, w);
  CHECK(a2.at(0, 0) == 1.0);
  CHECK(a2.at(0, 1) == 0.7);
  CHECK(a2.at(1, 0) == 0.7);
  CHECK(a2.at(1, 1) == 1.0);

  CHECK_THROWS_AS(weighted_adjacency(pair, {}), MissingEdgeWeight);
}

TEST_CASE("rerooting permutes the adjacency matrix") {
  TreeTopology t = binary_tree_7();
  std::vector<double> w{0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
  RootedTree a(t, 0);
  RootedTree b(t, 4);
  WeightedAdjacency ma = weighted_adjacency(a, w);
  WeightedAdjacency mb = weighted_adjacency(b, w);
  // Entry for a vertex pair must be identical whatever the ordering.
  for (Vertex u = 0; u < 7; ++u) {
    for (Vertex v = 0; v < 7; ++v) {
      CHECK(ma.at(a.position(u), a.position(v)) ==
            mb.at(b.position(u), b.position(v)));
    }
  }
}

TEST_CASE("property: every root works and parents precede children") {
  RngStream rng(2024, 1);
  for (int trial = 0; trial < 30; ++trial) {
    const Vertex d = static_cast<Vertex>(2 + rng.next_u64() % 12);
    TreeTopology t = random_tree(d, rng);
    for (Vertex r = 0; r < d; ++r) {
      RootedTree rt(t, r);
      REQUIRE(rt.order().size() == d);
      CHECK(rt.order().front() == r);
      for (Vertex v = 0; v < d; ++v) {
        if (v == r) continue;
        CHECK(rt.position(rt.parent(v)) < rt.position(v));
        CHECK(t.has_edge(v, rt.parent(v)));
      }
      for (Vertex v = 0; v < d; ++v)
        for (Vertex c : rt.children(v)) CHECK(rt.parent(c) == v);
    }
  }
}

TEST_CASE("property: path reversal and breadth-first distance") {
  RngStream rng(2024, 2);
  for (int trial = 0; trial < 20; ++trial) {
    const Vertex d = static_cast<Vertex>(2 + rng.next_u64() % 14);
    TreeTopology t = random_tree(d, rng);
    for (Vertex u = 0; u < d; ++u) {
      // Breadth-first distances from u.
      std::vector<int> dist(d, -1);
      std::queue<Vertex> q;
      q.push(u);
      dist[u] = 0;
      while (!q.empty()) {
        Vertex w = q.front();
        q.pop();
        for (Vertex nbr : t.neighbors(w)) {
          if (dist[nbr] < 0) {
            dist[nbr] = dist[w] + 1;
            q.push(nbr);
          }
        }
      }
      for (Vertex v = 0; v < d; ++v) {
        const auto forward = t.path(u, v);
        const auto backward = t.path(v, u);
        CHECK(forward.size() == static_cast<std::size_t>(dist[v]));
        REQUIRE(forward.size() == backward.size());
        for (std::size_t i = 0; i < forward.size(); ++i) {
          const Edge& f = forward[i];
          const Edge& b = backward[backward.size() - 1 - i];
          CHECK(f.first == b.second);
          CHECK(f.second == b.first);
        }
      }
    }
  }
}

TEST_CASE("property: adjacency column structure and weight recovery") {
  RngStream rng(2024, 3);
  for (int trial = 0; trial < 20; ++trial) {
    const Vertex d = static_cast<Vertex>(2 + rng.next_u64() % 10);
    TreeTopology t = random_tree(d, rng);
    std::vector<double> w(t.edges().size());
    for (auto& x : w) x = rng.next_uniform() + 0.01;
    const Vertex r = static_cast<Vertex>(rng.next_u64() % d);
    RootedTree rt(t, r);
    WeightedAdjacency a = weighted_adjacency(rt, w);
    for (std::size_t j = 1; j < a.d; ++j) {
      std::size_t first_nonzero = a.d;
      for (std::size_t i = 0; i < j; ++i) {
        if (a.at(i, j) != 0.0) {
          first_nonzero = i;
          break;
        }
      }
      CHECK(first_nonzero == rt.position(rt.parent(rt.order()[j])));
    }
    // Reading weights back through the order permutation recovers them exactly.
    for (std::size_t e = 0; e < t.edges().size(); ++e) {
      const Edge& edge = t.edges()[e];
      CHECK(a.at(rt.position(edge.first), rt.position(edge.second)) == w[e]);
    }
  }
}

TEST_CASE("labels") {
  TreeTopology t(3, {{0, 1}, {1, 2}}, {"a", "b", "c"});
  CHECK(t.label(1) == "b");
  CHECK(t.find_label("c") == Vertex{2});
  CHECK(!t.find_label("z").has_value());
  CHECK_THROWS_AS(TreeTopology(3, {{0, 1}, {1, 2}}, {"a", "b"}), LengthMismatch);
}
