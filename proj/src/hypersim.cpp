#include "mtet/hypersim.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace mtet {

namespace {

std::size_t hash_combine(std::size_t h, std::size_t k) {
  return h ^ (k + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

HyperEntityContext make_context(const ReducedHypergraph& rh, bool is_hyperedge, int id,
                                const std::vector<std::vector<int>>& incidence,
                                std::uint64_t seed) {
  const int n = rh.h.node_count();
  const int m = (int)rh.h.hyperedges().size();
  HyperEntityContext ctx;
  ctx.is_hyperedge = is_hyperedge;
  ctx.id = id;
  ctx.n_nodes = n;
  ctx.n_hyperedges = m;
  ctx.incident = is_hyperedge ? rh.h.hyperedges()[id] : incidence[id];
  if (!is_hyperedge) ctx.weight = rh.h.node_weight(id);
  ctx.rng_seed = derive_seed(seed, is_hyperedge ? (std::uint64_t)n + id : (std::uint64_t)id);
  return ctx;
}

}  // namespace

HyperRunResult direct_run_hypergraph(const ReducedHypergraph& rh, const HyperProgramFactory& make,
                                     std::uint64_t seed, int max_rounds) {
  const int n = rh.h.node_count();
  const int m = (int)rh.h.hyperedges().size();
  auto incidence = rh.h.node_incidence();

  std::vector<std::unique_ptr<HyperEntityBehavior>> node_beh(n), he_beh(m);
  std::vector<std::vector<int>> he_slot_of_node(n);  // position of node inside hyperedge member list
  for (int v = 0; v < n; ++v) {
    node_beh[v] = make(false, v);
    node_beh[v]->init(make_context(rh, false, v, incidence, seed));
    for (int e : incidence[v]) {
      const auto& mem = rh.h.hyperedges()[e];
      he_slot_of_node[v].push_back(
          (int)(std::find(mem.begin(), mem.end(), v) - mem.begin()));
    }
  }
  for (int e = 0; e < m; ++e) {
    he_beh[e] = make(true, e);
    he_beh[e]->init(make_context(rh, true, e, incidence, seed));
  }

  HyperRunResult res;
  std::vector<char> node_halted(n, 0), he_halted(m, 0);
  // he_to_node[v][i] = payload from incident hyperedge i, arriving next round
  std::vector<std::vector<MaybePayload>> he_to_node(n);
  for (int v = 0; v < n; ++v) he_to_node[v].resize(incidence[v].size());

  for (int round = 1;; ++round) {
    bool all_halted = true;
    for (int v = 0; v < n; ++v)
      if (!node_halted[v]) all_halted = false;
    for (int e = 0; e < m; ++e)
      if (!he_halted[e]) all_halted = false;
    bool pending = false;
    for (int v = 0; v < n; ++v)
      if (!node_halted[v])
        for (const auto& p : he_to_node[v])
          if (p) pending = true;
    if (all_halted && !pending) break;
    if (round > max_rounds) {
      res.timed_out = true;
      break;
    }

    // node step
    std::vector<std::vector<MaybePayload>> node_to_he(m);
    for (int e = 0; e < m; ++e) node_to_he[e].resize(rh.h.hyperedges()[e].size());
    for (int v = 0; v < n; ++v) {
      if (node_halted[v]) continue;
      std::vector<MaybePayload> outbox(incidence[v].size());
      if (node_beh[v]->on_round(round, he_to_node[v], outbox)) node_halted[v] = 1;
      for (std::size_t i = 0; i < outbox.size(); ++i)
        if (outbox[i]) node_to_he[incidence[v][i]][he_slot_of_node[v][i]] = std::move(outbox[i]);
      std::fill(he_to_node[v].begin(), he_to_node[v].end(), MaybePayload{});
    }

    // hyperedge step (same round)
    for (int e = 0; e < m; ++e) {
      if (he_halted[e]) continue;
      std::vector<MaybePayload> outbox(rh.h.hyperedges()[e].size());
      if (he_beh[e]->on_round(round, node_to_he[e], outbox)) he_halted[e] = 1;
      const auto& mem = rh.h.hyperedges()[e];
      for (std::size_t i = 0; i < outbox.size(); ++i) {
        if (!outbox[i]) continue;
        int v = mem[i];
        auto it = std::find(incidence[v].begin(), incidence[v].end(), e);
        he_to_node[v][it - incidence[v].begin()] = std::move(outbox[i]);
      }
    }

    std::size_t rh_hash = 0x9ULL;
    for (int v = 0; v < n; ++v)
      rh_hash = hash_combine(rh_hash, std::hash<std::string>{}(node_beh[v]->snapshot()));
    for (int e = 0; e < m; ++e)
      rh_hash = hash_combine(rh_hash, std::hash<std::string>{}(he_beh[e]->snapshot()));
    res.round_hashes.push_back(rh_hash);
    res.simulated_rounds = round;
  }

  for (int v = 0; v < n; ++v) res.node_outputs.push_back(node_beh[v]->output());
  for (int e = 0; e < m; ++e) res.hyperedge_outputs.push_back(he_beh[e]->output());
  return res;
}

HyperRunResult run_hypergraph_on_graph(const Graph& g, const ReducedHypergraph& rh,
                                       const HyperProgramFactory& make, const SimModel& model,
                                       std::uint64_t seed, int max_rounds) {
  const int n = rh.h.node_count();
  const int m = (int)rh.h.hyperedges().size();
  const int bandwidth = model.effective_bandwidth(g.node_count());
  auto incidence = rh.h.node_incidence();

  // replica owners: edge entity at both endpoints, triangle entity at all corners
  std::vector<std::vector<NodeId>> node_owners(n), he_owners(m);
  for (int v = 0; v < n; ++v) {
    const Edge& e = rh.node_to_edge[v];
    node_owners[v] = {e.u, e.v};
  }
  for (int e = 0; e < m; ++e) {
    const Triangle& t = rh.hyperedge_to_triangle[e];
    he_owners[e] = {t.a, t.b, t.c};
  }

  // replicas[owner graph node] keyed by entity
  std::map<std::pair<int, int>, std::unique_ptr<HyperEntityBehavior>> rep;  // (entity_key, owner)
  auto node_key = [](int v) { return v; };
  auto he_key = [&](int e) { return n + e; };
  for (int v = 0; v < n; ++v)
    for (NodeId o : node_owners[v]) {
      auto b = make(false, v);
      b->init(make_context(rh, false, v, incidence, seed));
      rep[{node_key(v), o}] = std::move(b);
    }
  for (int e = 0; e < m; ++e)
    for (NodeId o : he_owners[e]) {
      auto b = make(true, e);
      b->init(make_context(rh, true, e, incidence, seed));
      rep[{he_key(e), o}] = std::move(b);
    }

  std::vector<std::vector<int>> he_slot_of_node(n);
  for (int v = 0; v < n; ++v)
    for (int e : incidence[v]) {
      const auto& mem = rh.h.hyperedges()[e];
      he_slot_of_node[v].push_back(
          (int)(std::find(mem.begin(), mem.end(), v) - mem.begin()));
    }

  // bit accounting covers payload bits only, matching the base simulator
  const int header_bits = 0;

  HyperRunResult res;
  std::vector<char> node_halted(n, 0), he_halted(m, 0);
  std::vector<std::vector<MaybePayload>> he_to_node(n);
  for (int v = 0; v < n; ++v) he_to_node[v].resize(incidence[v].size());

  for (int round = 1;; ++round) {
    bool all_halted = true;
    for (int v = 0; v < n; ++v)
      if (!node_halted[v]) all_halted = false;
    for (int e = 0; e < m; ++e)
      if (!he_halted[e]) all_halted = false;
    bool pending = false;
    for (int v = 0; v < n; ++v)
      if (!node_halted[v])
        for (const auto& p : he_to_node[v])
          if (p) pending = true;
    if (all_halted && !pending) break;
    if (round > max_rounds) {
      res.timed_out = true;
      break;
    }

    // --- node entity step, executed by every replica ---
    std::vector<std::vector<MaybePayload>> node_out(n);  // agreed outbox per entity
    for (int v = 0; v < n; ++v) {
      if (node_halted[v]) continue;
      std::vector<std::vector<MaybePayload>> boxes;
      std::vector<char> halts;
      for (NodeId o : node_owners[v]) {
        std::vector<MaybePayload> outbox(incidence[v].size());
        halts.push_back(rep.at({node_key(v), o})->on_round(round, he_to_node[v], outbox));
        boxes.push_back(std::move(outbox));
      }
      for (std::size_t i = 1; i < boxes.size(); ++i)
        if (boxes[i] != boxes[0] || halts[i] != halts[0] ||
            rep.at({node_key(v), node_owners[v][i]})->snapshot() !=
                rep.at({node_key(v), node_owners[v][0]})->snapshot())
          throw CoherencyError("replicas of hypergraph node " + std::to_string(v) +
                               " diverged in round " + std::to_string(round));
      if (halts[0]) node_halted[v] = 1;
      node_out[v] = std::move(boxes[0]);
      std::fill(he_to_node[v].begin(), he_to_node[v].end(), MaybePayload{});
    }

    // --- cross-edge traffic: min endpoint of e informs the opposite corner ---
    std::map<Edge, long long> edge_bits;
    std::map<Edge, int> edge_msgs;
    long long deliveries = 0;
    for (int v = 0; v < n; ++v) {
      if (node_out[v].empty()) continue;
      const Edge& ge = rh.node_to_edge[v];
      for (std::size_t i = 0; i < node_out[v].size(); ++i) {
        if (!node_out[v][i]) continue;
        int e = incidence[v][i];
        const Triangle& t = rh.hyperedge_to_triangle[e];
        NodeId corner = t.a + t.b + t.c - ge.u - ge.v;
        Edge carrier = make_edge(ge.u, corner);
        edge_bits[carrier] += header_bits + (long long)node_out[v][i]->size() * 8;
        edge_msgs[carrier] += 1;
        ++deliveries;
        res.max_edge_bits =
            std::max(res.max_edge_bits, header_bits + (int)node_out[v][i]->size() * 8);
      }
    }
    res.total_graph_messages += deliveries;
    for (const auto& [e, c] : edge_msgs)
      res.max_messages_per_edge_round = std::max(res.max_messages_per_edge_round, c);
    int rounds_this_step = deliveries > 0 ? 1 : 0;
    if (model.mode == SimMode::kCongest) {
      for (const auto& [e, bits] : edge_bits)
        rounds_this_step =
            std::max(rounds_this_step, (int)((bits + bandwidth - 1) / bandwidth));
      // payloads are chunked into bandwidth-sized frames over those rounds
      res.max_frame_bits = std::max(res.max_frame_bits, std::min(res.max_edge_bits, bandwidth));
    } else {
      res.max_frame_bits = res.max_edge_bits;
    }
    res.graph_rounds += rounds_this_step;

    // --- hyperedge entity step, 0 graph rounds (all corners already hold
    // every incoming payload after the cross-edge traffic above) ---
    for (int e = 0; e < m; ++e) {
      if (he_halted[e]) continue;
      const auto& mem = rh.h.hyperedges()[e];
      std::vector<MaybePayload> inbox(mem.size());
      for (std::size_t i = 0; i < mem.size(); ++i)
        if (!node_out[mem[i]].empty()) {
          const auto& inc = incidence[mem[i]];
          auto it = std::find(inc.begin(), inc.end(), e);
          inbox[i] = node_out[mem[i]][it - inc.begin()];
        }
      std::vector<std::vector<MaybePayload>> boxes;
      std::vector<char> halts;
      for (NodeId o : he_owners[e]) {
        std::vector<MaybePayload> outbox(mem.size());
        halts.push_back(rep.at({he_key(e), o})->on_round(round, inbox, outbox));
        boxes.push_back(std::move(outbox));
      }
      for (std::size_t i = 1; i < boxes.size(); ++i)
        if (boxes[i] != boxes[0] || halts[i] != halts[0] ||
            rep.at({he_key(e), he_owners[e][i]})->snapshot() !=
                rep.at({he_key(e), he_owners[e][0]})->snapshot())
          throw CoherencyError("replicas of hyperedge " + std::to_string(e) +
                               " diverged in round " + std::to_string(round));
      if (halts[0]) he_halted[e] = 1;
      for (std::size_t i = 0; i < boxes[0].size(); ++i) {
        if (!boxes[0][i]) continue;
        int v = mem[i];
        const auto& inc = incidence[v];
        auto it = std::find(inc.begin(), inc.end(), e);
        he_to_node[v][it - inc.begin()] = std::move(boxes[0][i]);
      }
    }

    std::size_t rh_hash = 0x9ULL;
    for (int v = 0; v < n; ++v)
      rh_hash = hash_combine(
          rh_hash, std::hash<std::string>{}(rep.at({node_key(v), node_owners[v][0]})->snapshot()));
    for (int e = 0; e < m; ++e)
      rh_hash = hash_combine(
          rh_hash, std::hash<std::string>{}(rep.at({he_key(e), he_owners[e][0]})->snapshot()));
    res.round_hashes.push_back(rh_hash);
    res.simulated_rounds = round;
  }

  for (int v = 0; v < n; ++v)
    res.node_outputs.push_back(rep.at({node_key(v), node_owners[v][0]})->output());
  for (int e = 0; e < m; ++e)
    res.hyperedge_outputs.push_back(rep.at({he_key(e), he_owners[e][0]})->output());
  return res;
}

}  // namespace mtet
