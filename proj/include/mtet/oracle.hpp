#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "mtet/graph.hpp"

namespace mtet {

// A registered edge-disjoint substructure: any transversal must contain at
// least `local_tau` edges of `edges` (sub-optimality of parts).
struct SubstructureBound {
  std::vector<Edge> edges;  // sorted
  int local_tau = 0;
};

struct SolverOptions {
  int triangle_budget = 5000;
  long long enumeration_cap = 100000;
  std::vector<SubstructureBound> bounds;
  std::vector<Edge> forced_in;
  std::vector<Edge> forced_out;
  // When set, only these triangles must be covered (each must be a triangle
  // of the graph); otherwise every triangle of the graph is a constraint.
  std::optional<std::vector<Triangle>> restrict_triangles;
  // When set, search only proves/disproves the existence of a transversal of
  // weight <= target instead of optimizing.
  std::optional<Rational> decision_target;
  bool audit_bounds = false;  // assert every emitted bound <= incumbent optimum
};

struct SolverStats {
  long long branches = 0;
  double elapsed_seconds = 0.0;
};

struct CoverSolution {
  EdgeSet cover;
  Rational value{0};
  bool optimal = false;
  SolverStats stats;
};

struct HypergraphCoverSolution {
  std::vector<int> cover;  // sorted node ids
  Rational value{0};
  bool optimal = false;
  SolverStats stats;
};

struct CliqueProfile {
  int n = 0;
  int tau = 0;
  int mu = 0;
  std::vector<EdgeSet> witness_covers;
};

CoverSolution tau(const Graph& g, const SolverOptions& opts = {});
// Decision variant: is there a transversal of weight <= target?
bool tau_at_most(const Graph& g, const Rational& target, const SolverOptions& opts = {});
std::vector<EdgeSet> enumerate_min_tets(const Graph& g, const SolverOptions& opts = {});
int mu(const Graph& g, NodeId v, const SolverOptions& opts = {});
CliqueProfile clique_profile(int n, const SolverOptions& opts = {});
EdgeSet map_cover(const Graph& g, const EdgeSet& s, const std::vector<NodeId>& perm);
bool forced_cover_exists(int n, NodeId v, const std::vector<NodeId>& neighbors,
                         const SolverOptions& opts = {});
// An optimal clique transversal whose edges at v are exactly {v,u} for the
// given neighbors; throws if none exists.
EdgeSet forced_cover_witness(int n, NodeId v, const std::vector<NodeId>& neighbors,
                             const SolverOptions& opts = {});
HypergraphCoverSolution exact_mhvc(const Hypergraph& h, const SolverOptions& opts = {});

Graph complete_graph(int n);

}  // namespace mtet
