#pragma once

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mtet/rational.hpp"

namespace mtet {

using NodeId = int;

struct Edge {
  NodeId u = 0;  // u < v always
  NodeId v = 0;
  auto operator<=>(const Edge&) const = default;
};

inline Edge make_edge(NodeId a, NodeId b) {
  return a < b ? Edge{a, b} : Edge{b, a};
}

struct Triangle {
  NodeId a = 0, b = 0, c = 0;  // a < b < c
  auto operator<=>(const Triangle&) const = default;
  bool contains_edge(const Edge& e) const {
    Edge ab{a, b}, ac{a, c}, bc{b, c};
    return e == ab || e == ac || e == bc;
  }
  std::array<Edge, 3> edges() const { return {Edge{a, b}, Edge{a, c}, Edge{b, c}}; }
};

inline Triangle make_triangle(NodeId x, NodeId y, NodeId z) {
  if (x > y) std::swap(x, y);
  if (y > z) std::swap(y, z);
  if (x > y) std::swap(x, y);
  return Triangle{x, y, z};
}

// Undirected simple graph on dense node ids [0, n). Optional positive
// rational edge weights (absent = unweighted = all 1) and role labels.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : n_(n), adj_(n) {
    if (n < 0) throw std::invalid_argument("negative node count");
  }

  int node_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  NodeId add_node() {
    adj_.emplace_back();
    return n_++;
  }
  void add_edge(NodeId a, NodeId b);
  void add_edge(NodeId a, NodeId b, const Rational& w);
  void set_weight(const Edge& e, const Rational& w);

  bool has_edge(NodeId a, NodeId b) const;
  bool has_edge(const Edge& e) const { return has_edge(e.u, e.v); }
  bool weighted() const { return !weights_.empty(); }
  Rational weight(const Edge& e) const;

  const std::vector<Edge>& edges() const { return edges_; }           // sorted
  const std::vector<NodeId>& neighbors(NodeId v) const;               // sorted
  int degree(NodeId v) const { return static_cast<int>(neighbors(v).size()); }
  int max_degree() const;
  int diameter() const;  // max eccentricity over the largest component; -1 if disconnected

  void set_label(NodeId v, const std::string& role);
  std::optional<std::string> label(NodeId v) const;
  const std::map<NodeId, std::string>& labels() const { return labels_; }

  std::vector<int> bfs_distances(NodeId src) const;  // -1 = unreachable

  void check_node(NodeId v) const {
    if (v < 0 || v >= n_) throw std::invalid_argument("node id out of range: " + std::to_string(v));
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::map<Edge, Rational> weights_;
  std::vector<std::vector<NodeId>> adj_;
  std::map<NodeId, std::string> labels_;
};

// A set of edges of a specific graph, kept sorted and deduplicated.
class EdgeSet {
 public:
  EdgeSet() = default;
  explicit EdgeSet(std::vector<Edge> edges);

  void insert(const Edge& e);
  bool contains(const Edge& e) const;
  int size() const { return static_cast<int>(edges_.size()); }
  bool empty() const { return edges_.empty(); }
  const std::vector<Edge>& edges() const { return edges_; }

  Rational total_weight(const Graph& g) const;

  auto operator<=>(const EdgeSet&) const = default;

 private:
  std::vector<Edge> edges_;
};

// Node-weighted hypergraph; rank f = max hyperedge cardinality.
class Hypergraph {
 public:
  Hypergraph() = default;
  explicit Hypergraph(int n) : n_(n), weights_(n, Rational(1)) {}

  int node_count() const { return n_; }
  void set_node_weight(int v, const Rational& w);
  const Rational& node_weight(int v) const { return weights_.at(v); }

  void add_hyperedge(std::vector<int> nodes);
  const std::vector<std::vector<int>>& hyperedges() const { return hyperedges_; }
  int rank() const;
  int max_node_degree() const;
  std::vector<std::vector<int>> node_incidence() const;  // node -> hyperedge ids

 private:
  int n_ = 0;
  std::vector<Rational> weights_;
  std::vector<std::vector<int>> hyperedges_;  // each sorted
};

// H_G with back-references: hypergraph node <-> edge of G, hyperedge <-> triangle.
struct ReducedHypergraph {
  Hypergraph h;
  std::vector<Edge> node_to_edge;
  std::map<Edge, int> edge_to_node;
  std::vector<Triangle> hyperedge_to_triangle;
  std::map<Triangle, int> triangle_to_hyperedge;
};

struct BallResult {
  Graph subgraph;                      // induced, nodes relabeled [0, k)
  std::vector<NodeId> members;         // new id -> original id (sorted)
  std::map<NodeId, NodeId> to_local;   // original id -> new id
  NodeId center_local = 0;
};

std::vector<Triangle> enumerate_triangles(const Graph& g);
BallResult ball(const Graph& g, NodeId v, int r);
bool is_tet(const Graph& g, const EdgeSet& s);
bool ball_isomorphic(const Graph& g1, NodeId v1, const Graph& g2, NodeId v2, int r);
ReducedHypergraph reduced_hypergraph(const Graph& g);

}  // namespace mtet
