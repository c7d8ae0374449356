#pragma once

#include <cstdint>

#include "mtet/graph.hpp"
#include "mtet/hypersim.hpp"

namespace mtet {

enum class MhvcVariant { kMatching, kPrimalDual };

// Random-priority proposal rounds: an uncovered hyperedge is selected when it
// holds the highest (priority, id) at every one of its nodes; all nodes of a
// selected hyperedge join the cover. Selected hyperedges are node-disjoint,
// so the cover is within the hypergraph rank of optimal. Unweighted.
HyperProgramFactory mhvc_matching_program();

// Dual-raising rounds: every node splits its residual weight evenly among the
// uncovered hyperedges requesting it, each hyperedge raises by its smallest
// offer, and a node joins the cover once its residual drops to eps_prime
// times its weight. Value at most rank/(1 - eps_prime) times optimal.
HyperProgramFactory mhvc_primal_dual_program(const Rational& eps_prime = Rational(1, 8));

struct MhvcRunReport {
  std::vector<int> cover_nodes;  // hypergraph node ids, sorted
  Rational value{0};
  bool cover_valid = false;      // hits every hyperedge
  bool outputs_match = false;    // direct run == on-graph simulation
  HyperRunResult direct;
  HyperRunResult simulated;
};

MhvcRunReport run_mhvc(const Graph& g, const ReducedHypergraph& rh,
                       const HyperProgramFactory& program, const SimModel& model,
                       std::uint64_t seed, int max_rounds = 4000);

struct MtetApproxResult {
  EdgeSet cover;        // edges of g corresponding to the chosen hypergraph nodes
  Rational value{0};
  bool valid = false;   // cover is a transversal of g
  MhvcRunReport report;
};

// Runs the chosen vertex-cover program on the triangle hypergraph of g
// (simulated on g itself) and maps the result back to an edge set.
MtetApproxResult mtet_via_mhvc(const Graph& g, MhvcVariant variant, const SimModel& model,
                               std::uint64_t seed, const Rational& eps_prime = Rational(1, 8));

}  // namespace mtet
