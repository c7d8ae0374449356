#include <doctest.h>

#include <set>

#include "mtet/gadgets.hpp"
#include "mtet/graph.hpp"
#include "mtet/oracle.hpp"

using namespace mtet;

TEST_CASE("line generator matches the definition counts") {
  auto l2 = make_line(2);
  CHECK(l2.graph.node_count() == 4);
  CHECK(l2.graph.edge_count() == 5);
  CHECK(enumerate_triangles(l2.graph).size() == 2);
  auto l4 = make_line(4);
  CHECK(l4.graph.node_count() == 6);
  CHECK(l4.graph.edge_count() == 9);
  CHECK(enumerate_triangles(l4.graph).size() == 4);
  CHECK_THROWS(make_line(1));
  CHECK_THROWS(make_line(3));
  CHECK_THROWS(make_line(0));
}

TEST_CASE("line optimum is the unique diagonal set") {
  for (int t : {2, 4, 6, 8, 10}) {
    auto line = make_line(t);
    auto optima = enumerate_min_tets(line.graph);
    REQUIRE(optima.size() == 1);
    CHECK(optima[0].size() == t / 2);
    std::vector<Edge> diagonals;
    for (int i = 0; i < t / 2; ++i) diagonals.push_back(make_edge(line.v(i), line.u(i + 1)));
    CHECK(optima[0] == EdgeSet(diagonals));
  }
}

TEST_CASE("ring generator output passes the recognizer") {
  for (int t : {6, 8, 10, 20}) {
    auto ring = make_ring(t);
    CHECK(is_ring_of_triangles(ring.graph, t));
    CHECK(static_cast<int>(ring.triangle_order.size()) == t);
    CHECK(static_cast<int>(ring.shared_edges.size()) == t);
    // shared edges are distinct and each lies in the two adjacent triangles
    std::set<Edge> uniq(ring.shared_edges.begin(), ring.shared_edges.end());
    CHECK(uniq.size() == ring.shared_edges.size());
    for (int i = 0; i < t; ++i) {
      CHECK(ring.triangle_order[i].contains_edge(ring.shared_edges[i]));
      CHECK(ring.triangle_order[(i + 1) % t].contains_edge(ring.shared_edges[i]));
    }
  }
  auto r6 = make_ring(6);
  CHECK(r6.graph.edge_count() == 12);
  CHECK(enumerate_triangles(r6.graph).size() == 6);
  CHECK_THROWS(make_ring(4));
  CHECK_THROWS(make_ring(7));
}

TEST_CASE("ring optima are exactly the even and odd shared-edge sets") {
  for (int t : {6, 8, 10}) {
    auto ring = make_ring(t);
    auto optima = enumerate_min_tets(ring.graph);
    REQUIRE(optima.size() == 2);
    std::vector<Edge> even, odd;
    for (int i = 0; i < t; ++i)
      (i % 2 == 0 ? even : odd).push_back(ring.shared_edges[i]);
    std::set<EdgeSet> expect{EdgeSet(even), EdgeSet(odd)};
    std::set<EdgeSet> got(optima.begin(), optima.end());
    CHECK(got == expect);
    CHECK(optima[0].size() == t / 2);
  }
}

TEST_CASE("recognizer rejects non-rings") {
  CHECK_FALSE(is_ring_of_triangles(make_line(8).graph, 8));
  CHECK_FALSE(is_ring_of_triangles(complete_graph(4), 4));
  CHECK_FALSE(is_ring_of_triangles(make_ring(8).graph, 10));  // wrong length
  Graph empty(5);
  CHECK_FALSE(is_ring_of_triangles(empty, 0));
}

TEST_CASE("indistinguishable pair has the announced global parameters") {
  auto p = make_theorem1_pair(8);
  CHECK(p.g1.node_count() == 12);
  CHECK(p.g2.node_count() == 12);
  CHECK(p.diameter1 == 5);
  CHECK(p.diameter2 == 6);
  CHECK(tau(p.g1).value == Rational(4));
  CHECK(tau(p.g2).value == Rational(5));
  CHECK_THROWS(make_theorem1_pair(6));
  CHECK_THROWS(make_theorem1_pair(9));
}

TEST_CASE("probe balls are isomorphic at the working radius but not beyond") {
  for (int t : {8, 12}) {
    auto p = make_theorem1_pair(t);
    CHECK(p.radius >= 1);
    CHECK(ball_isomorphic(p.g1, p.probe1, p.g2, p.probe2, p.radius));
    // one more round would reveal the pendant nodes on one side only
    CHECK_FALSE(ball_isomorphic(p.g1, p.probe1, p.g2, p.probe2, p.radius + 1));
  }
}

TEST_CASE("probes are forced to output different edges") {
  auto p = make_theorem1_pair(8);
  CHECK(p.probe_output1.size() == 1);
  CHECK(p.probe_output2.size() == 1);
  // map g2's probe output back through the correspondence
  // v'_j -> v_{t/2-j}, u'_j -> u_{t/2+1-j}
  int t = 8, h = t / 2;
  auto line2 = make_line(t + 2);
  Edge out2 = p.probe_output2.edges()[0];
  auto back = [&](NodeId x) {
    // ids in a line: v_j = j for j <= h', u_j = h'+1+j with h' = (t+2)/2
    int hp = (t + 2) / 2;
    if (x <= hp) return NodeId(h - x);            // v'_j -> v_{h-j}
    return NodeId(h + 1 + (h + 1 - (x - hp - 1)));  // u'_j -> u_{h+1-j}
  };
  Edge mapped = make_edge(back(out2.u), back(out2.v));
  CHECK(mapped != p.probe_output1.edges()[0]);
  // both probes map to each other under the correspondence
  CHECK(back(p.probe2) == p.probe1);
}
