#include <doctest.h>

#include "mtet/graph.hpp"
#include "mtet/oracle.hpp"

using namespace mtet;

TEST_CASE("edges are normalized and deduplicated") {
  Graph g(4);
  g.add_edge(2, 1);
  g.add_edge(1, 2);
  g.add_edge(0, 3);
  CHECK(g.edge_count() == 2);
  CHECK(g.has_edge(make_edge(1, 2)));
  CHECK(g.has_edge(make_edge(2, 1)));
  CHECK_FALSE(g.has_edge(make_edge(0, 1)));
  CHECK_THROWS(g.add_edge(1, 1));
}

TEST_CASE("triangle enumeration on small graphs") {
  SUBCASE("complete graph counts match n choose 3") {
    for (int n = 3; n <= 8; ++n) {
      Graph g = complete_graph(n);
      int expect = n * (n - 1) * (n - 2) / 6;
      CHECK(static_cast<int>(enumerate_triangles(g).size()) == expect);
    }
  }
  SUBCASE("triangle-free graph has none") {
    Graph c5(5);
    for (int i = 0; i < 5; ++i) c5.add_edge(i, (i + 1) % 5);
    CHECK(enumerate_triangles(c5).empty());
  }
  SUBCASE("triangles are sorted and unique") {
    Graph g = complete_graph(5);
    auto ts = enumerate_triangles(g);
    for (size_t i = 0; i + 1 < ts.size(); ++i) CHECK(ts[i] < ts[i + 1]);
    for (const Triangle& t : ts) {
      CHECK(t.a < t.b);
      CHECK(t.b < t.c);
    }
  }
}

TEST_CASE("bfs distances and diameter") {
  Graph path(5);
  for (int i = 0; i < 4; ++i) path.add_edge(i, i + 1);
  auto d = path.bfs_distances(0);
  CHECK(d[4] == 4);
  CHECK(path.diameter() == 4);
  CHECK(complete_graph(6).diameter() == 1);
}

TEST_CASE("radius-r ball induces the right subgraph") {
  Graph path(7);
  for (int i = 0; i < 6; ++i) path.add_edge(i, i + 1);
  BallResult b = ball(path, 3, 2);
  CHECK(b.members == std::vector<NodeId>{1, 2, 3, 4, 5});
  CHECK(b.subgraph.node_count() == 5);
  CHECK(b.subgraph.edge_count() == 4);
  CHECK(b.center_local == b.to_local.at(3));
}

TEST_CASE("transversal membership check") {
  Graph g = complete_graph(4);
  // covering two opposite edges hits all four triangles
  EdgeSet s({make_edge(0, 1), make_edge(2, 3)});
  CHECK(is_tet(g, s));
  EdgeSet one({make_edge(0, 1)});
  CHECK_FALSE(is_tet(g, one));
  EdgeSet bad({make_edge(0, 1), make_edge(0, 1)});
  CHECK(bad.size() == 1);  // deduplicated
  Graph h(4);
  h.add_edge(0, 1);
  CHECK_THROWS(is_tet(h, s));  // member edges must exist in the graph
}

TEST_CASE("ball isomorphism compares rooted neighborhoods") {
  Graph p1(9), p2(9);
  for (int i = 0; i < 8; ++i) { p1.add_edge(i, i + 1); p2.add_edge(i, i + 1); }
  CHECK(ball_isomorphic(p1, 4, p2, 4, 3));
  CHECK(ball_isomorphic(p1, 4, p2, 4, 4));
  // mirror positions give isomorphic balls; off-by-one positions do not
  CHECK(ball_isomorphic(p1, 2, p2, 6, 3));
  CHECK(ball_isomorphic(p1, 2, p2, 6, 2));
  CHECK_FALSE(ball_isomorphic(p1, 1, p2, 2, 3));
  // different local structure
  Graph tri(9);
  for (int i = 0; i < 8; ++i) tri.add_edge(i, i + 1);
  tri.add_edge(3, 5);
  CHECK_FALSE(ball_isomorphic(p1, 4, tri, 4, 1));
}

TEST_CASE("reduction to a 3-uniform hypergraph") {
  Graph g = complete_graph(4);
  ReducedHypergraph r = reduced_hypergraph(g);
  CHECK(r.h.node_count() == 6);
  CHECK(r.h.hyperedges().size() == 4);
  CHECK(r.h.rank() == 3);
  for (size_t i = 0; i < r.node_to_edge.size(); ++i)
    CHECK(r.edge_to_node.at(r.node_to_edge[i]) == static_cast<int>(i));
  // hyperedge node sets are exactly the triangle edge triples
  for (size_t t = 0; t < r.hyperedge_to_triangle.size(); ++t) {
    Triangle tri = r.hyperedge_to_triangle[t];
    for (const Edge& e : tri.edges()) {
      int node = r.edge_to_node.at(e);
      const auto& he = r.h.hyperedges()[t];
      CHECK(std::find(he.begin(), he.end(), node) != he.end());
    }
  }
  // weights carry over
  Graph w = complete_graph(3);
  w.set_weight(make_edge(0, 1), Rational(1, 2));
  ReducedHypergraph rw = reduced_hypergraph(w);
  CHECK(rw.h.node_weight(rw.edge_to_node.at(make_edge(0, 1))) == Rational(1, 2));
}
