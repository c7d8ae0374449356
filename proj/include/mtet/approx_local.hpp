#pragma once

#include <cstdint>
#include <vector>

#include "mtet/graph.hpp"
#include "mtet/oracle.hpp"

namespace mtet {

// Cheapest way to cover, with edges touching the radius-r ball around v,
// every triangle that has at least one edge fully inside that ball.
// r = -1 is the empty ball (value 0).
struct GValue {
  Rational value{0};
  EdgeSet witness;
};
GValue g_value(const Graph& g, NodeId v, int r);

// Largest radius the carving may reach before the growth argument forces a
// stop: value at least doubles every two growth steps is impossible, so the
// (1+eps) test fails within ceil(log_{1+eps} m) + 2 probes.
int carve_step_cap(int edge_count, const Rational& eps);

struct BallRecord {
  NodeId center = 0;
  int radius = -1;       // final odd radius, or -1 when the first probe was empty
  int steps = 0;
  Rational value{0};      // g at the final radius
  Rational prev_value{0}; // g two less
  EdgeSet added_cover;
  std::vector<Edge> core_region;  // residual edges touching the radius-2 smaller ball
};

struct CarveAudit {
  bool stopping_ok = false;     // every stop obeyed value <= (1+eps) * prev
  bool regions_disjoint_ok = false;
  bool step_cap_ok = false;
  bool cover_valid = false;     // union is a transversal of the input graph
  bool ok() const { return stopping_ok && regions_disjoint_ok && step_cap_ok && cover_valid; }
};

struct CarveResult {
  EdgeSet cover;
  Rational value{0};
  std::vector<BallRecord> balls;
  CarveAudit audit;
  int step_cap = 0;
};

// Processes nodes in the given order (all nodes, any permutation); each node
// grows its ball until the value stops growing by more than (1+eps), keeps
// the witness cover, and deletes every residual edge inside the final ball.
CarveResult ball_carve_sequential(const Graph& g, const Rational& eps,
                                  const std::vector<NodeId>& order);

struct Decomposition {
  int power = 1;  // clusters live in the power graph G^power
  int colors = 0;
  int max_weak_diameter = 0;  // in power-graph hops, across the full power graph
  std::vector<int> cluster_of;       // node -> cluster id
  std::vector<int> color_of_cluster;
  std::vector<std::vector<NodeId>> clusters;
  bool valid = false;  // partition covers all nodes, same-color clusters non-adjacent
};

// Random-order ball growing with the doubling stop rule, peeled color by
// color; boundary shells are deferred to later colors, which makes each
// color class properly separated in the power graph.
Decomposition network_decomposition(const Graph& g, int power, std::uint64_t seed);

struct DistributedCarveResult {
  CarveResult carve;
  Decomposition decomp;
  std::vector<NodeId> order;        // nodes sorted by (cluster color, id)
  Rational sequential_value{0};
  bool matches_sequential = false;  // same cover value as the sequential run on `order`
  long long accounted_rounds = 0;   // gather + broadcast phases, leader model
};

// Cluster leaders of one color at a time re-run the sequential template for
// their members on a bounded local view of the residual graph; the
// decomposition power is wide enough that same-color clusters cannot
// interact, so the result must match the sequential run on the same order.
DistributedCarveResult ball_carve_distributed(const Graph& g, const Rational& eps,
                                              std::uint64_t seed);

}  // namespace mtet
