#pragma once

#include <optional>
#include <vector>

#include "mtet/graph.hpp"
#include "mtet/oracle.hpp"

namespace mtet {

// A chain of t triangles where consecutive triangles share an edge.
// Nodes: v_0..v_{t/2} (ids 0..t/2) and u_0..u_{t/2} (ids t/2+1..t+1).
struct LineOfTriangles {
  int t = 0;
  Graph graph;
  NodeId v(int i) const;
  NodeId u(int i) const;
};

// A closed cycle of t triangles where consecutive triangles share an edge
// and all other pairs are edge-disjoint.
struct RingOfTriangles {
  int t = 0;
  Graph graph;
  std::vector<Triangle> triangle_order;  // T_0..T_{t-1}, cyclically adjacent
  std::vector<Edge> shared_edges;        // e_i shared by T_i and T_{i+1 mod t}
};

// Two locally indistinguishable graphs whose unique optima force different
// outputs at the probe nodes.
struct IndistinguishablePair {
  Graph g1;  // t-chain plus two pendant nodes w1, w2
  Graph g2;  // (t+2)-chain
  NodeId probe1 = 0;
  NodeId probe2 = 0;
  EdgeSet probe_output1;  // optimum edges incident to probe1 in g1
  EdgeSet probe_output2;  // optimum edges incident to probe2 in g2
  int diameter1 = 0;
  int diameter2 = 0;
  int radius = 0;  // balls of this radius around the probes are isomorphic
};

LineOfTriangles make_line(int t);
RingOfTriangles make_ring(int t);
bool is_ring_of_triangles(const Graph& g, int t);
// Recognizer that also reports the cyclic triangle order and shared edges.
std::optional<RingOfTriangles> recognize_ring(const Graph& g, int t);
IndistinguishablePair make_theorem1_pair(int t);

}  // namespace mtet
