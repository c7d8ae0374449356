#include <doctest.h>

#include <set>

#include "mtet/graph.hpp"
#include "mtet/oracle.hpp"

using namespace mtet;

namespace {

// A line of t triangles sharing edges v_i u_i (built inline here so the
// exact solver can be tested before the generator module exists).
Graph line_of_triangles(int t) {
  // nodes: v_0..v_{t/2}, u_0..u_{t/2} interleaved as in the generators module
  int half = t / 2;
  Graph g(2 * (half + 1));
  auto v = [&](int i) { return 2 * i; };
  auto u = [&](int i) { return 2 * i + 1; };
  for (int i = 0; i <= half; ++i) g.add_edge(v(i), u(i));
  for (int i = 0; i < half; ++i) {
    g.add_edge(v(i), u(i + 1));
    g.add_edge(v(i), v(i + 1));
    g.add_edge(u(i), u(i + 1));
  }
  return g;
}

}  // namespace

TEST_CASE("clique transversal numbers match the closed form") {
  // tau(K_n) = C(n,2) - floor(n^2/4)
  for (int n = 3; n <= 8; ++n) {
    CliqueProfile p = clique_profile(n);
    CHECK(p.tau == n * (n - 1) / 2 - (n * n) / 4);
    for (const EdgeSet& s : p.witness_covers) {
      CHECK(s.size() == p.tau);
      CHECK(is_tet(complete_graph(n), s));
    }
  }
}

TEST_CASE("clique optimum counts and max incident multiplicity") {
  struct Row { int n, tau, mu, num_optima; };
  // frozen values from an independent integer-programming enumeration
  const Row rows[] = {
      {3, 1, 1, 3}, {4, 2, 1, 3}, {5, 4, 2, 10}, {6, 6, 2, 10}, {7, 9, 3, 35},
  };
  for (const Row& r : rows) {
    CliqueProfile p = clique_profile(r.n);
    CHECK(p.tau == r.tau);
    CHECK(p.mu == r.mu);
    CHECK(static_cast<int>(p.witness_covers.size()) == r.num_optima);
  }
}

TEST_CASE("enumeration returns distinct optimal transversals") {
  Graph g = complete_graph(5);
  auto optima = enumerate_min_tets(g);
  std::set<EdgeSet> uniq(optima.begin(), optima.end());
  CHECK(uniq.size() == optima.size());
  for (const EdgeSet& s : optima) {
    CHECK(is_tet(g, s));
    CHECK(s.total_weight(g) == Rational(4));
  }
}

TEST_CASE("line of triangles has a unique optimum of diagonal edges") {
  Graph g = line_of_triangles(4);
  auto opt = tau(g);
  CHECK(opt.value == Rational(2));
  auto optima = enumerate_min_tets(g);
  CHECK(optima.size() == 1);
  // the unique optimum is the set of shared edges between consecutive pairs
  for (const Edge& e : optima[0].edges()) {
    auto ts = enumerate_triangles(g);
    int hit = 0;
    for (const Triangle& t : ts)
      if (t.contains_edge(e)) ++hit;
    CHECK(hit == 2);  // every chosen edge covers two triangles
  }
}

TEST_CASE("weighted instances are solved exactly in rationals") {
  Graph g = complete_graph(3);
  g.set_weight(make_edge(0, 1), Rational(1, 3));
  g.set_weight(make_edge(0, 2), Rational(1, 2));
  g.set_weight(make_edge(1, 2), Rational(2));
  auto sol = tau(g);
  CHECK(sol.value == Rational(1, 3));
  CHECK(sol.cover.contains(make_edge(0, 1)));

  // fractional tie: two cheapest edges have equal weight
  g.set_weight(make_edge(0, 2), Rational(1, 3));
  auto optima = enumerate_min_tets(g);
  CHECK(optima.size() == 2);
}

TEST_CASE("forced and excluded edges constrain the search") {
  Graph g = complete_graph(4);
  SolverOptions o;
  o.forced_in = {make_edge(0, 1)};
  auto sol = tau(g, o);
  CHECK(sol.value == Rational(2));
  CHECK(sol.cover.contains(make_edge(0, 1)));

  SolverOptions ex;
  // excluding a full triangle's edges makes the instance infeasible
  ex.forced_out = {make_edge(0, 1), make_edge(0, 2), make_edge(1, 2)};
  CHECK_THROWS(tau(g, ex));
}

TEST_CASE("substructure bounds are audited against the optimum") {
  Graph g = line_of_triangles(6);
  SolverOptions o;
  o.audit_bounds = true;
  // register the first pair of triangles as a local structure needing 1 edge
  SubstructureBound b;
  Graph first = line_of_triangles(2);
  b.edges = first.edges();
  b.local_tau = 1;
  o.bounds = {b};
  auto sol = tau(g, o);
  CHECK(sol.value == Rational(3));
}

TEST_CASE("forced incidence decision on cliques") {
  // In K_4 (mu = 1) node 0 can be matched with any single neighbor.
  CHECK(forced_cover_exists(4, 0, {1}));
  CHECK(forced_cover_exists(4, 0, {3}));
  // In K_5 (mu = 2) every optimum pairs a node with two others.
  CHECK(forced_cover_exists(5, 0, {1, 2}));
  // Wrong set size must be rejected.
  CHECK_THROWS(forced_cover_exists(5, 0, {1}));
  CHECK_THROWS(forced_cover_exists(5, 0, {0, 1}));
}

TEST_CASE("covers map through graph automorphisms") {
  Graph g = complete_graph(4);
  EdgeSet s({make_edge(0, 1), make_edge(2, 3)});
  EdgeSet m = map_cover(g, s, {1, 0, 3, 2});
  CHECK(m == s);
  EdgeSet rot = map_cover(g, s, {1, 2, 3, 0});
  CHECK(rot.contains(make_edge(1, 2)));
  CHECK(rot.contains(make_edge(0, 3)));
  CHECK_THROWS(map_cover(g, s, {0, 0, 1, 2}));
  // non-edges after mapping are rejected on sparse graphs
  Graph h(4);
  h.add_edge(0, 1);
  h.add_edge(2, 3);
  CHECK_THROWS(map_cover(h, EdgeSet({make_edge(0, 1)}), {0, 2, 1, 3}));
}

TEST_CASE("hypergraph cover solver agrees with the reduction") {
  for (int n = 4; n <= 7; ++n) {
    Graph g = complete_graph(n);
    ReducedHypergraph r = reduced_hypergraph(g);
    auto hv = exact_mhvc(r.h);
    auto tv = tau(g);
    CHECK(hv.value == tv.value);
    // the chosen hypergraph nodes form a transversal of the original graph
    std::vector<Edge> edges;
    for (int v : hv.cover) edges.push_back(r.node_to_edge[v]);
    CHECK(is_tet(g, EdgeSet(edges)));
  }
}

TEST_CASE("weighted hypergraph cover is exact") {
  Hypergraph h(4);
  h.add_hyperedge({0, 1, 2});
  h.add_hyperedge({1, 2, 3});
  h.set_node_weight(1, Rational(3, 2));
  h.set_node_weight(2, Rational(5));
  auto sol = exact_mhvc(h);
  // either node 1 alone (3/2) or nodes 0 and 3 (2); node 1 wins
  CHECK(sol.value == Rational(3, 2));
  CHECK(sol.cover == std::vector<int>{1});
}
