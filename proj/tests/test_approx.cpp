#include <random>

#include "doctest.h"
#include "mtet/approx_local.hpp"
#include "mtet/approx_mhvc.hpp"
#include "mtet/oracle.hpp"

using namespace mtet;

namespace {

Graph random_graph(int n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) g.add_edge(u, v);
  return g;
}

std::vector<NodeId> identity_order(const Graph& g) {
  std::vector<NodeId> order(g.node_count());
  for (int i = 0; i < g.node_count(); ++i) order[i] = i;
  return order;
}

}  // namespace

TEST_SUITE("ball_value") {
  TEST_CASE("empty radius is zero and one triangle costs one") {
    Graph g = complete_graph(3);
    CHECK(g_value(g, 0, -1).value == Rational(0));
    auto gv = g_value(g, 0, 1);
    CHECK(gv.value == Rational(1));
    CHECK(is_tet(g, gv.witness));
  }

  TEST_CASE("radius one around a clique center matches the full optimum") {
    // K_5: every triangle has an edge inside the radius-1 ball of node 0
    Graph g = complete_graph(5);
    auto gv = g_value(g, 0, 1);
    CHECK(gv.value == tau(g).value);
  }

  TEST_CASE("value is monotone in the radius") {
    Graph g = random_graph(12, 0.5, 7);
    Rational prev(0);
    for (int r = -1; r <= 5; r += 2) {
      auto gv = g_value(g, 3, r);
      CHECK(gv.value >= prev);
      prev = gv.value;
    }
  }

  TEST_CASE("distant triangles are invisible but their shared edges count") {
    // two triangles joined by a long path; from one end only the near one shows
    Graph g(8);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    g.add_edge(3, 4);
    g.add_edge(4, 5);
    g.add_edge(5, 6);
    g.add_edge(5, 7);
    g.add_edge(6, 7);
    CHECK(g_value(g, 0, 1).value == Rational(1));
    CHECK(g_value(g, 0, 3).value == Rational(1));
    CHECK(g_value(g, 0, 7).value == Rational(2));
  }
}

TEST_SUITE("ball_carving") {
  TEST_CASE("complete graph examples stay within the guarantee") {
    for (int n : {5, 6, 7}) {
      Graph g = complete_graph(n);
      Rational opt = tau(g).value;
      for (const char* eps_s : {"1/10", "1/2", "1"}) {
        Rational eps = parse_rational(eps_s);
        auto res = ball_carve_sequential(g, eps, identity_order(g));
        CHECK(res.audit.ok());
        CHECK(res.value <= (Rational(1) + eps) * opt);
      }
    }
  }

  TEST_CASE("random graphs: valid covers, audits, and approximation factor") {
    for (std::uint64_t seed : {11ULL, 12ULL, 13ULL, 14ULL}) {
      Graph g = random_graph(14, 0.35, seed);
      Rational opt = tau(g).value;
      Rational eps = parse_rational("1/2");
      auto res = ball_carve_sequential(g, eps, identity_order(g));
      CHECK(res.audit.ok());
      CHECK(res.value <= (Rational(1) + eps) * opt);
    }
  }

  TEST_CASE("triangle-free input yields the empty cover in one probe per node") {
    Graph g(6);
    for (int i = 0; i < 6; ++i) g.add_edge(i, (i + 1) % 6);
    auto res = ball_carve_sequential(g, Rational(1), identity_order(g));
    CHECK(res.cover.empty());
    CHECK(res.audit.ok());
    for (const auto& b : res.balls) CHECK(b.steps == 1);
  }
}

TEST_SUITE("decomposition") {
  TEST_CASE("partition, separation and bounds on a random graph") {
    Graph g = random_graph(40, 0.08, 99);
    auto d = network_decomposition(g, 2, 5);
    CHECK(d.valid);
    int logn = 1;
    while ((1 << logn) < 40) ++logn;
    CHECK(d.colors <= 8 * logn);
    CHECK(d.max_weak_diameter <= 8 * logn);
    // every node in exactly one cluster
    std::vector<int> count(40, 0);
    for (const auto& c : d.clusters)
      for (NodeId v : c) ++count[v];
    for (int v = 0; v < 40; ++v) CHECK(count[v] == 1);
  }

  TEST_CASE("deterministic for a fixed seed") {
    Graph g = random_graph(30, 0.1, 4);
    auto a = network_decomposition(g, 3, 17);
    auto b = network_decomposition(g, 3, 17);
    CHECK(a.clusters == b.clusters);
    CHECK(a.color_of_cluster == b.color_of_cluster);
  }
}

TEST_SUITE("distributed_carving") {
  TEST_CASE("cluster phases reproduce the sequential cover exactly") {
    for (std::uint64_t seed : {21ULL, 22ULL, 23ULL}) {
      Graph g = random_graph(13, 0.35, seed);
      auto res = ball_carve_distributed(g, parse_rational("1/2"), seed);
      CHECK(res.decomp.valid);
      CHECK(res.matches_sequential);
      CHECK(res.carve.audit.ok());
      CHECK(res.accounted_rounds > 0);
    }
  }
}

TEST_SUITE("cover_via_hypergraph") {
  TEST_CASE("matching variant: valid cover within three times optimal") {
    for (std::uint64_t seed : {31ULL, 32ULL, 33ULL}) {
      Graph g = random_graph(12, 0.4, seed);
      Rational opt = tau(g).value;
      auto res = mtet_via_mhvc(g, MhvcVariant::kMatching, SimModel::local(), seed);
      CHECK(res.valid);
      CHECK(res.report.cover_valid);
      CHECK(res.report.outputs_match);
      CHECK(res.value <= Rational(3) * opt);
    }
  }

  TEST_CASE("primal dual variant on weighted input") {
    Graph g = complete_graph(5);
    std::mt19937_64 rng(77);
    for (const Edge& e : g.edges())
      g.set_weight(e, Rational(1 + (long long)(rng() % 4), 2));
    Rational opt = tau(g).value;
    Rational eps_prime(1, 8);
    auto res = mtet_via_mhvc(g, MhvcVariant::kPrimalDual, SimModel::local(), 5, eps_prime);
    CHECK(res.valid);
    CHECK(res.report.outputs_match);
    CHECK(res.value <= Rational(3) / (Rational(1) - eps_prime) * opt);
  }

  TEST_CASE("congest run agrees with the direct execution") {
    Graph g = random_graph(11, 0.4, 41);
    auto local = mtet_via_mhvc(g, MhvcVariant::kMatching, SimModel::local(), 8);
    auto cong = mtet_via_mhvc(g, MhvcVariant::kMatching, SimModel::congest(), 8);
    CHECK(local.valid);
    CHECK(cong.valid);
    CHECK(cong.report.outputs_match);
    CHECK(local.cover == cong.cover);
    // bandwidth splitting costs rounds, never correctness
    CHECK(cong.report.simulated.graph_rounds >= local.report.simulated.graph_rounds);
  }

  TEST_CASE("graph without triangles yields the empty cover") {
    Graph g(5);
    for (int i = 0; i + 1 < 5; ++i) g.add_edge(i, i + 1);
    auto res = mtet_via_mhvc(g, MhvcVariant::kMatching, SimModel::local(), 1);
    CHECK(res.valid);
    CHECK(res.cover.empty());
  }
}
