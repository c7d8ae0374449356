#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "mtet/graph.hpp"

namespace mtet {

enum class SimMode { kLocal, kCongest };

struct SimModel {
  SimMode mode = SimMode::kLocal;
  int bandwidth_bits = 0;  // CONGEST; 0 = default 4 * ceil(log2 n)
  static SimModel local() { return {SimMode::kLocal, 0}; }
  static SimModel congest(int bits = 0) { return {SimMode::kCongest, bits}; }
  int effective_bandwidth(int n) const;
};

using Payload = std::vector<std::uint8_t>;

// Per-node view handed to a program at start. Ports are indices into the
// sorted neighbor list; nodes know n (announced to everyone) and get a
// private seeded random stream.
struct NodeContext {
  NodeId id = 0;
  int n = 0;
  std::vector<NodeId> neighbors;  // sorted; port p talks to neighbors[p]
  std::uint64_t rng_seed = 0;
};

// One node's behavior. on_round receives everything delivered this round
// (inbox[p] = messages that arrived over port p, in send order) and fills
// outbox[p]; returning true halts the node (it stays silent afterwards).
class NodeBehavior {
 public:
  virtual ~NodeBehavior() = default;
  virtual void init(const NodeContext& ctx) = 0;
  virtual bool on_round(int round, const std::vector<std::vector<Payload>>& inbox,
                        std::vector<std::vector<Payload>>& outbox) = 0;
  virtual std::string output() const = 0;
  virtual std::string snapshot() const { return output(); }
};

using ProgramFactory = std::function<std::unique_ptr<NodeBehavior>(NodeId)>;

struct RoundTranscript {
  int rounds = 0;              // rounds in which any message was in flight
  int ticks = 0;               // total lock-step iterations executed
  int max_edge_bits = 0;       // largest single message, in bits
  long long total_messages = 0;
  std::vector<int> per_round_message_count;
  std::vector<std::string> outputs;       // per node
  std::vector<std::size_t> state_hashes;  // per node, final snapshot hash
  bool timed_out = false;
};

class SimTimeout : public std::runtime_error {
 public:
  SimTimeout(std::string what, RoundTranscript partial)
      : std::runtime_error(std::move(what)), partial_transcript(std::move(partial)) {}
  RoundTranscript partial_transcript;
};

class BandwidthError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Deterministic stream seed for (global seed, entity id).
std::uint64_t derive_seed(std::uint64_t global_seed, std::uint64_t entity);

RoundTranscript run(const Graph& g, const ProgramFactory& make_node, const SimModel& model,
                    std::uint64_t seed, int max_rounds);

// Splits a payload into frames of at most `bits` bits each, so CONGEST
// programs can spread a large message across rounds with visible cost.
std::vector<Payload> fragment_payload(const Payload& p, int bits);
Payload reassemble_payload(const std::vector<Payload>& frames);

struct TriangleDiscoveryResult {
  std::vector<std::vector<Triangle>> per_node;
  int rounds = 0;
  RoundTranscript transcript;
};
TriangleDiscoveryResult triangle_discovery(const Graph& g, const SimModel& model);

}  // namespace mtet
