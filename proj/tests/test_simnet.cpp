#include <sstream>

#include "doctest.h"
#include "mtet/hypersim.hpp"
#include "mtet/oracle.hpp"
#include "mtet/simnet.hpp"

using namespace mtet;

namespace {

// Floods the smallest id seen so far for n-1 rounds (enough to cross any
// connected graph), then reads the final inbox and halts.
class MinIdBehavior : public NodeBehavior {
 public:
  void init(const NodeContext& ctx) override {
    ctx_ = ctx;
    best_ = ctx.id;
  }
  bool on_round(int round, const std::vector<std::vector<Payload>>& inbox,
                std::vector<std::vector<Payload>>& outbox) override {
    for (const auto& q : inbox)
      for (const auto& msg : q) {
        NodeId v = 0;
        for (std::size_t b = 0; b < msg.size(); ++b) v |= (NodeId)msg[b] << (8 * b);
        best_ = std::min(best_, v);
      }
    if (round < ctx_.n) {
      Payload p{(std::uint8_t)(best_ & 0xff)};
      for (auto& port : outbox) port.push_back(p);
      return false;
    }
    return true;
  }
  std::string output() const override { return std::to_string(best_); }

 private:
  NodeContext ctx_;
  NodeId best_ = 0;
};

Graph path_graph(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

class BigTalker : public NodeBehavior {
 public:
  void init(const NodeContext& ctx) override { deg_ = (int)ctx.neighbors.size(); }
  bool on_round(int round, const std::vector<std::vector<Payload>>&,
                std::vector<std::vector<Payload>>& outbox) override {
    if (round == 1) {
      Payload big(64, 0xab);
      for (auto& port : outbox) port.push_back(big);
      return false;
    }
    return true;
  }
  std::string output() const override { return ""; }

 private:
  int deg_ = 0;
};

}  // namespace

TEST_SUITE("round_simulator") {
  TEST_CASE("min id flooding on a path settles in diameter rounds") {
    Graph g = path_graph(4);
    auto factory = [](NodeId) { return std::make_unique<MinIdBehavior>(); };
    auto tr = run(g, factory, SimModel::local(), 7, 100);
    REQUIRE(tr.outputs.size() == 4);
    for (const auto& out : tr.outputs) CHECK(out == "0");
    CHECK(tr.rounds == 3);
  }

  TEST_CASE("deterministic transcripts for equal seeds") {
    Graph g = path_graph(6);
    auto factory = [](NodeId) { return std::make_unique<MinIdBehavior>(); };
    auto a = run(g, factory, SimModel::local(), 42, 100);
    auto b = run(g, factory, SimModel::local(), 42, 100);
    CHECK(a.outputs == b.outputs);
    CHECK(a.state_hashes == b.state_hashes);
    CHECK(a.per_round_message_count == b.per_round_message_count);
  }

  TEST_CASE("bandwidth cap is enforced with edge and round named") {
    Graph g = path_graph(3);
    auto factory = [](NodeId) { return std::make_unique<BigTalker>(); };
    CHECK_NOTHROW(run(g, factory, SimModel::local(), 0, 10));
    try {
      run(g, factory, SimModel::congest(), 0, 10);
      FAIL("expected bandwidth error");
    } catch (const BandwidthError& err) {
      std::string what = err.what();
      CHECK(what.find("edge") != std::string::npos);
      CHECK(what.find("round 1") != std::string::npos);
    }
  }

  TEST_CASE("timeout raises with partial transcript") {
    Graph g = path_graph(2);
    // never halts, always chatters
    class Chatter : public NodeBehavior {
     public:
      void init(const NodeContext&) override {}
      bool on_round(int, const std::vector<std::vector<Payload>>&,
                    std::vector<std::vector<Payload>>& outbox) override {
        for (auto& port : outbox) port.push_back(Payload{1});
        return false;
      }
      std::string output() const override { return "running"; }
    };
    auto factory = [](NodeId) { return std::make_unique<Chatter>(); };
    try {
      run(g, factory, SimModel::local(), 0, 5);
      FAIL("expected timeout");
    } catch (const SimTimeout& t) {
      CHECK(t.partial_transcript.timed_out);
      CHECK(t.partial_transcript.outputs.size() == 2);
    }
  }

  TEST_CASE("seeded node streams differ per node but not per run") {
    class RngProbe : public NodeBehavior {
     public:
      void init(const NodeContext& ctx) override {
        std::mt19937_64 rng(ctx.rng_seed);
        val_ = rng();
      }
      bool on_round(int, const std::vector<std::vector<Payload>>&,
                    std::vector<std::vector<Payload>>&) override {
        return true;
      }
      std::string output() const override { return std::to_string(val_); }

     private:
      std::uint64_t val_ = 0;
    };
    Graph g = path_graph(3);
    auto factory = [](NodeId) { return std::make_unique<RngProbe>(); };
    auto a = run(g, factory, SimModel::local(), 9, 10);
    auto b = run(g, factory, SimModel::local(), 9, 10);
    auto c = run(g, factory, SimModel::local(), 10, 10);
    CHECK(a.outputs == b.outputs);
    CHECK(a.outputs != c.outputs);
    CHECK(a.outputs[0] != a.outputs[1]);
  }
}

TEST_SUITE("triangle_discovery") {
  TEST_CASE("complete graph on four nodes, both models") {
    Graph g = complete_graph(4);
    auto local = triangle_discovery(g, SimModel::local());
    CHECK(local.rounds == 1);
    for (NodeId v = 0; v < 4; ++v) CHECK(local.per_node[v].size() == 3);

    auto cong = triangle_discovery(g, SimModel::congest());
    CHECK(cong.rounds <= g.max_degree());
    CHECK(cong.per_node == local.per_node);
    CHECK(cong.transcript.max_edge_bits <= SimModel::congest().effective_bandwidth(4));
  }

  TEST_CASE("triangle free graph yields empty lists") {
    Graph g = path_graph(5);
    g.add_edge(0, 4);  // 5-cycle
    for (auto& model : {SimModel::local(), SimModel::congest()}) {
      auto res = triangle_discovery(g, model);
      for (const auto& lst : res.per_node) CHECK(lst.empty());
    }
  }

  TEST_CASE("local lists agree with the global triangle enumeration") {
    Graph g = complete_graph(6);
    g.add_node();
    g.add_edge(0, 6);
    auto res = triangle_discovery(g, SimModel::congest());
    auto all = enumerate_triangles(g);
    for (NodeId v = 0; v < g.node_count(); ++v) {
      std::vector<Triangle> expect;
      for (const auto& t : all)
        if (t.a == v || t.b == v || t.c == v) expect.push_back(t);
      CHECK(res.per_node[v] == expect);
    }
  }
}

namespace {

// Each hypergraph node reports its id to incident hyperedges; each hyperedge
// answers with the minimum id it heard; nodes output that minimum.
class HandshakeEntity : public HyperEntityBehavior {
 public:
  void init(const HyperEntityContext& ctx) override { ctx_ = ctx; }
  bool on_round(int round, const std::vector<MaybePayload>& inbox,
                std::vector<MaybePayload>& outbox) override {
    if (!ctx_.is_hyperedge) {
      if (round == 1) {
        Payload p{(std::uint8_t)(ctx_.id & 0xff), (std::uint8_t)((ctx_.id >> 8) & 0xff)};
        for (auto& slot : outbox) slot = p;
        return false;
      }
      for (const auto& msg : inbox)
        if (msg) {
          int v = (*msg)[0] | ((int)(*msg)[1] << 8);
          best_ = std::min(best_, v);
        }
      return true;
    }
    if (round == 1) {
      for (const auto& msg : inbox)
        if (msg) {
          int v = (*msg)[0] | ((int)(*msg)[1] << 8);
          best_ = std::min(best_, v);
        }
      Payload p{(std::uint8_t)(best_ & 0xff), (std::uint8_t)((best_ >> 8) & 0xff)};
      for (auto& slot : outbox) slot = p;
      return true;
    }
    return true;
  }
  std::string output() const override { return std::to_string(best_); }

 private:
  HyperEntityContext ctx_;
  int best_ = 1 << 14;
};

}  // namespace

TEST_SUITE("hypergraph_simulation") {
  TEST_CASE("direct and on graph runs agree on outputs and hashes") {
    Graph g = complete_graph(5);
    auto rh = reduced_hypergraph(g);
    auto factory = [](bool, int) { return std::make_unique<HandshakeEntity>(); };
    auto direct = direct_run_hypergraph(rh, factory, 3, 50);
    for (auto& model : {SimModel::local(), SimModel::congest()}) {
      auto sim = run_hypergraph_on_graph(g, rh, factory, model, 3, 50);
      CHECK(sim.node_outputs == direct.node_outputs);
      CHECK(sim.hyperedge_outputs == direct.hyperedge_outputs);
      CHECK(sim.round_hashes == direct.round_hashes);
      CHECK(sim.simulated_rounds == direct.simulated_rounds);
      // LOCAL charges one graph round per simulated round with node traffic
      CHECK(sim.graph_rounds >= 1);
      if (model.mode == SimMode::kLocal) CHECK(sim.graph_rounds <= sim.simulated_rounds);
    }
  }

  TEST_CASE("hyperedge minimum matches the smallest member id") {
    Graph g = complete_graph(5);
    auto rh = reduced_hypergraph(g);
    auto factory = [](bool, int) { return std::make_unique<HandshakeEntity>(); };
    auto direct = direct_run_hypergraph(rh, factory, 0, 50);
    for (std::size_t e = 0; e < rh.h.hyperedges().size(); ++e) {
      int expect = rh.h.hyperedges()[e][0];
      CHECK(direct.hyperedge_outputs[e] == std::to_string(expect));
    }
    // node learns the min over all triangles through its edge, one round later
    auto incidence = rh.h.node_incidence();
    for (int v = 0; v < rh.h.node_count(); ++v) {
      int expect = 1 << 14;
      for (int e : incidence[v])
        expect = std::min(expect, rh.h.hyperedges()[e][0]);
      CHECK(direct.node_outputs[v] == std::to_string(expect));
    }
  }

  TEST_CASE("per edge delivery count stays within the triangle bound") {
    Graph g = complete_graph(6);
    auto rh = reduced_hypergraph(g);
    auto factory = [](bool, int) { return std::make_unique<HandshakeEntity>(); };
    auto sim = run_hypergraph_on_graph(g, rh, factory, SimModel::local(), 1, 50);
    // each triangle through an edge injects at most two payloads onto it
    CHECK(sim.max_messages_per_edge_round <= 2 * (g.max_degree() - 1));
  }
}
