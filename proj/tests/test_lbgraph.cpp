#include <doctest.h>

#include <set>
#include <string>

#include "mtet/gadgets.hpp"
#include "mtet/lbgraph.hpp"
#include "mtet/oracle.hpp"

using namespace mtet;

TEST_CASE("parameter derivation for small k") {
  auto p2 = lb_params(2);
  CHECK(p2.mu == 1);
  CHECK(p2.tau_clique == 1);
  CHECK(p2.L == 1);
  CHECK(p2.K == 4);
  CHECK(p2.M == 32);
  auto p4 = lb_params(4);
  CHECK(p4.mu == 2);
  CHECK(p4.tau_clique == 4);
  CHECK(p4.L == 2);
  CHECK(p4.M == 4 * 4 + 4 * 3 + 40);  // 68
  CHECK_THROWS(lb_params(1));
  CHECK_THROWS(lb_params(7));
}

TEST_CASE("fixed graph layout at k=2") {
  auto inst = build_fixed(2);
  CHECK(inst.graph.node_count() == 62);
  CHECK(inst.graph.edge_count() == 132);
  CHECK(inst.rings.size() == 2);
  for (const auto& ring : inst.rings) {
    CHECK(ring.edges.size() == 40);
    CHECK(ring.shared.size() == 20);
    CHECK(ring.false_side_optimum.size() == 10);
    CHECK(ring.true_side_optimum.size() == 10);
  }
  // partition sizes: V_A mirrors V_B
  int a_count = 0;
  for (char b : inst.in_part_b)
    if (!b) ++a_count;
  CHECK(a_count == 31);
}

TEST_CASE("every ring passes the recognizer and has odd designated separations") {
  for (int k : {2, 4}) {
    auto inst = build_fixed(k);
    CHECK(static_cast<int>(inst.rings.size()) == 2 * inst.params.L);
    for (const auto& ring : inst.rings) {
      // re-run the recognizer on the ring's own edges
      std::set<NodeId> nodes;
      for (const Edge& e : ring.edges) {
        nodes.insert(e.u);
        nodes.insert(e.v);
      }
      CHECK(nodes.size() == 20);
      // designated edges sit in the cyclic shared-edge order with odd gaps
      int sa = ring.pair == 1 ? kA1 : kA2;
      int sb = ring.pair == 1 ? kB1 : kB2;
      std::vector<Edge> designated = {
          make_edge(inst.a, inst.f[sa][ring.level]), make_edge(inst.a, inst.t[sa][ring.level]),
          make_edge(inst.b, inst.f[sb][ring.level]), make_edge(inst.b, inst.t[sb][ring.level])};
      std::vector<int> pos;
      for (const Edge& d : designated)
        for (size_t i = 0; i < ring.shared.size(); ++i)
          if (ring.shared[i] == d) pos.push_back(static_cast<int>(i));
      REQUIRE(pos.size() == 4);
      std::sort(pos.begin(), pos.end());
      for (size_t i = 0; i < 4; ++i) {
        int gap = pos[(i + 1) % 4] - pos[i];
        if (gap <= 0) gap += 20;
        CHECK(gap % 2 == 1);  // odd triangle separation between designated edges
      }
    }
  }
}

TEST_CASE("connector lines of two triangles exist on every side") {
  auto inst = build_fixed(2);
  for (int s = 0; s < 4; ++s) {
    NodeId ctr = (s == kA1 || s == kA2) ? inst.a : inst.b;
    for (int l = 0; l <= inst.params.mu; ++l) {
      NodeId h = inst.h[s][l], bit = inst.bits[s][l], c = inst.c[s][l];
      CHECK(inst.graph.has_edge(ctr, h));
      CHECK(inst.graph.has_edge(h, c));
      CHECK(inst.graph.has_edge(h, bit));
      CHECK(inst.graph.has_edge(ctr, c));
      CHECK(inst.graph.has_edge(ctr, bit));
      CHECK_FALSE(inst.graph.has_edge(c, bit));  // the two triangles share {ctr, h} only
    }
  }
}

TEST_CASE("bit nodes attach to gadget nodes by binary representation") {
  auto inst = build_fixed(4);  // mu = 2, L = 2
  for (int s = 0; s < 4; ++s) {
    for (int l = 0; l <= inst.params.mu; ++l) {
      for (int j = 0; j < inst.params.L; ++j) {
        bool one = (l >> j) & 1;
        CHECK(inst.graph.has_edge(inst.bits[s][l], inst.t[s][j]) == one);
        CHECK(inst.graph.has_edge(inst.bits[s][l], inst.f[s][j]) == !one);
      }
    }
  }
}

TEST_CASE("input edges land only inside their own partition side") {
  auto fixed = build_fixed(2);
  auto inst = add_inputs(fixed, "0110", "1001");
  CHECK(input_edges_within_partition(inst, true));
  CHECK(input_edges_within_partition(inst, false));
  // x bits add A-side edges only: two zeros -> two extra edges
  CHECK(inst.graph.edge_count() == fixed.graph.edge_count() + 4);
  CHECK(inst.graph.has_edge(fixed.bits[kA1][0], fixed.bits[kA2][0]));
  CHECK(inst.graph.has_edge(fixed.bits[kA1][1], fixed.bits[kA2][1]));
  CHECK(inst.graph.has_edge(fixed.bits[kB1][0], fixed.bits[kB2][1]));
  CHECK(inst.graph.has_edge(fixed.bits[kB1][1], fixed.bits[kB2][0]));
  auto all_ones = add_inputs(fixed, "1111", "1111");
  CHECK(all_ones.graph.edge_count() == fixed.graph.edge_count());
  CHECK_THROWS(add_inputs(fixed, "111", "1111"));
  CHECK_THROWS(add_inputs(fixed, "1111", "12x1"));
  // a planted cross-partition edge must be detected
  LbInstance mutated = add_inputs(fixed, "1111", "1111");
  mutated.graph.add_edge(mutated.bits[kA1][0], mutated.bits[kB2][0]);
  CHECK_FALSE(input_edges_within_partition(mutated, true));
}

TEST_CASE("disjointness predicate") {
  CHECK_FALSE(disj("1", "1"));
  CHECK(disj("10", "01"));
  CHECK(disj("0000", "1111"));
  CHECK(disj("", ""));
  CHECK_THROWS(disj("10", "011"));
}

TEST_CASE("substructure bounds are edge-disjoint and sum to M") {
  for (int k : {2, 4}) {
    auto inst = build_fixed(k);
    auto bounds = substructure_bounds(inst);
    std::set<Edge> seen;
    int total = 0;
    for (const auto& b : bounds) {
      total += b.local_tau;
      for (const Edge& e : b.edges) {
        CHECK(inst.graph.has_edge(e));
        CHECK_FALSE(seen.count(e));
        seen.insert(e);
      }
    }
    CHECK(total == inst.params.M);
  }
}

TEST_CASE("constructive cover is a transversal of size M") {
  auto fixed = build_fixed(2);
  auto inst = add_inputs(fixed, "1111", "1111");
  for (auto [i, j] : {std::pair{0, 0}, std::pair{0, 1}, std::pair{1, 0}, std::pair{1, 1}}) {
    EdgeSet cover = construct_cover(inst, i, j);
    CHECK(cover.size() == 32);
    CHECK(is_tet(inst.graph, cover));
    auto witness = verify_bit_correspondence(inst, cover);
    REQUIRE(witness.has_value());
    CHECK(witness->first == i);
    CHECK(witness->second == j);
  }
  auto sparse = add_inputs(fixed, "0111", "1111");
  CHECK_THROWS(construct_cover(sparse, 0, 0));  // x_{00} = 0: not a witness
  CHECK_THROWS(construct_cover(inst, 2, 0));    // index out of range
}

TEST_CASE("transversal size M is achievable exactly when inputs intersect") {
  auto fixed = build_fixed(2);
  struct Case {
    const char *x, *y;
  };
  for (const Case& c : {Case{"1111", "1111"}, Case{"0000", "0000"}, Case{"0000", "1111"},
                        Case{"1010", "0101"}, Case{"1010", "1010"}}) {
    auto inst = add_inputs(fixed, c.x, c.y);
    auto rep = verify_lemma(inst);
    CHECK(rep.M == 32);
    CHECK(rep.tau_at_least_M);
    CHECK(rep.equivalence);
    if (!rep.disjoint) CHECK(rep.tau == 32);
    else CHECK(rep.tau >= 33);
  }
}

TEST_CASE("family check passes and cut accounting matches") {
  auto rep = verify_family(2, 6, 12345, true);
  CHECK(rep.ok());
  CHECK(rep.samples == 6);
  auto structural = verify_family(4, 4, 99, false);
  CHECK(structural.node_set_consistent);
  CHECK(structural.x_edges_in_part_a);
  CHECK(structural.y_edges_in_part_b);

  auto inst2 = build_fixed(2);
  auto cut2 = cut_and_bound_report(inst2);
  CHECK(cut2.cut_size == 12);
  CHECK(cut2.per_ring == std::vector<int>{6, 6});
  CHECK(cut2.input_length == 4);
  CHECK(cut2.n == 62);
  CHECK(cut2.implied_bound > 0.0);
  auto inst4 = build_fixed(4);
  auto cut4 = cut_and_bound_report(inst4);
  CHECK(cut4.cut_size == 24);
  CHECK(cut4.per_ring == std::vector<int>{6, 6, 6, 6});
}
