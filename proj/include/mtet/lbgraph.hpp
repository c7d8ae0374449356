#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mtet/gadgets.hpp"
#include "mtet/graph.hpp"
#include "mtet/oracle.hpp"

namespace mtet {

// The four bit-gadget sides. A1/A2 hang off center a, B1/B2 off center b.
enum Side : int { kA1 = 0, kA2 = 1, kB1 = 2, kB2 = 3 };

struct LbParams {
  int k = 0;          // clique size parameter; cliques are K_{k+1} with the center
  int mu = 0;         // max optimum multiplicity at a clique node
  int tau_clique = 0; // optimum size of K_{k+1}
  int L = 0;          // bits per index: ceil(log2(mu+1)), at least 1
  int K = 0;          // input length (mu+1)^2
  int M = 0;          // target transversal size
};

// One 20-ring coupling side pair i at bit position l.
struct LbRing {
  int pair = 0;  // 1 couples A1/B1, 2 couples A2/B2
  int level = 0; // bit position l in [0, L)
  std::array<NodeId, 14> m{};   // auxiliary nodes m_0..m_13
  std::vector<Edge> edges;      // the ring's own 40 edges (global ids)
  std::vector<Edge> shared;     // shared edges in cyclic order
  // the two optimal transversals: shared edges of even resp. odd cyclic index,
  // normalized so the "false" set contains {center, f} and the "true" set
  // contains {center, t}
  EdgeSet false_side_optimum;
  EdgeSet true_side_optimum;
};

struct LbInstance {
  LbParams params;
  Graph graph;
  NodeId a = 0, b = 1;
  // per side: bit nodes (mu+1), f/t gadget nodes (L each), clique nodes (k),
  // connector nodes (mu+1)
  std::array<std::vector<NodeId>, 4> bits, f, t, c, h;
  std::vector<LbRing> rings;            // indexed (pair-1)*L + level
  std::vector<char> in_part_b;          // per node: 0 = V_A, 1 = V_B
  int fixed_edge_count = 0;             // edges before inputs were added
  std::optional<std::pair<std::string, std::string>> inputs;
};

struct LemmaReport {
  int tau = 0;
  int M = 0;
  bool disjoint = false;
  bool tau_at_least_M = false;
  bool equivalence = false;  // (tau == M) <=> !disjoint
  bool ok() const { return tau_at_least_M && equivalence; }
};

struct FamilyReport {
  int samples = 0;
  bool node_set_consistent = false;
  bool x_edges_in_part_a = false;
  bool y_edges_in_part_b = false;
  bool equivalence_ok = true;  // only meaningful when exact solving was requested
  bool exact_checked = false;
  std::string counterexample;  // empty when everything passed
  bool ok() const {
    return node_set_consistent && x_edges_in_part_a && y_edges_in_part_b && equivalence_ok;
  }
};

struct CutReport {
  int cut_size = 0;
  std::vector<int> per_ring;
  int input_length = 0;  // K
  int n = 0;
  double implied_bound = 0.0;  // K / (|C| * log2 n)
};

LbParams lb_params(int k);
LbInstance build_fixed(int k);
LbInstance add_inputs(const LbInstance& fixed, const std::string& x, const std::string& y);
bool disj(const std::string& x, const std::string& y);

// Substructure lower bounds used to prune exact solving: one K_{k+1} per
// clique, one triangle per connector, ten per ring; edge-disjoint by design
// and summing exactly to M.
std::vector<SubstructureBound> substructure_bounds(const LbInstance& inst);

EdgeSet construct_cover(const LbInstance& inst, int i, int j);
LemmaReport verify_lemma(const LbInstance& inst, const SolverOptions& base = {});
std::optional<std::pair<int, int>> verify_bit_correspondence(const LbInstance& inst,
                                                             const EdgeSet& cover);
// Checks that input-dependent edges stay inside their own partition side.
bool input_edges_within_partition(const LbInstance& inst, bool x_side);
FamilyReport verify_family(int k, int sample_count, std::uint64_t seed, bool exact);
CutReport cut_and_bound_report(const LbInstance& inst);

}  // namespace mtet
