#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mtet/graph.hpp"
#include "mtet/simnet.hpp"

namespace mtet {

// Programs over the triangle hypergraph of a graph: one entity per hypergraph
// node (an edge of the base graph) and one per hyperedge (a triangle). Each
// round every entity may send one payload to each incident counterpart.
struct HyperEntityContext {
  bool is_hyperedge = false;
  int id = 0;                    // hypergraph node id or hyperedge id
  int n_nodes = 0;               // hypergraph node count
  int n_hyperedges = 0;
  std::vector<int> incident;     // counterpart ids, sorted
  Rational weight{1};            // node weight (1 for hyperedges)
  std::uint64_t rng_seed = 0;
};

using MaybePayload = std::optional<Payload>;

class HyperEntityBehavior {
 public:
  virtual ~HyperEntityBehavior() = default;
  virtual void init(const HyperEntityContext& ctx) = 0;
  // inbox[i] / outbox[i] correspond to ctx.incident[i]; nullopt = no message.
  // Within a round, node entities act first and their messages reach the
  // incident hyperedge entities in the same round; hyperedge replies arrive
  // at the start of the next round.
  virtual bool on_round(int round, const std::vector<MaybePayload>& inbox,
                        std::vector<MaybePayload>& outbox) = 0;
  virtual std::string output() const = 0;
  virtual std::string snapshot() const { return output(); }
};

using HyperProgramFactory =
    std::function<std::unique_ptr<HyperEntityBehavior>(bool is_hyperedge, int id)>;

struct HyperRunResult {
  int simulated_rounds = 0;
  std::vector<std::string> node_outputs;
  std::vector<std::string> hyperedge_outputs;
  std::vector<std::size_t> round_hashes;  // one digest per simulated round
  bool timed_out = false;

  // filled only by the on-graph simulation
  int graph_rounds = 0;
  int max_messages_per_edge_round = 0;  // logical deliveries, per edge per simulated round
  int max_edge_bits = 0;   // largest logical payload
  int max_frame_bits = 0;  // largest on-wire frame after CONGEST chunking
  long long total_graph_messages = 0;
};

// Reference executor: runs the program on the hypergraph itself.
HyperRunResult direct_run_hypergraph(const ReducedHypergraph& rh, const HyperProgramFactory& make,
                                     std::uint64_t seed, int max_rounds);

// Simulates the same program on the base graph: the entity of edge e runs
// redundantly at both endpoints, the entity of triangle t at all three
// corners. Node-to-hyperedge traffic crosses real edges (the smaller endpoint
// of e informs the opposite corner of each triangle through e); hyperedge
// replies cost nothing because every simulator of e also simulates each
// triangle through e. Replicas are checked for agreement every round.
HyperRunResult run_hypergraph_on_graph(const Graph& g, const ReducedHypergraph& rh,
                                       const HyperProgramFactory& make, const SimModel& model,
                                       std::uint64_t seed, int max_rounds);

class CoherencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mtet
