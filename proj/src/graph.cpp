#include "mtet/graph.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <set>

namespace mtet {

void Graph::add_edge(NodeId a, NodeId b) {
  check_node(a);
  check_node(b);
  if (a == b) throw std::invalid_argument("self-loop rejected");
  Edge e = make_edge(a, b);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it != edges_.end() && *it == e) return;  // already present
  edges_.insert(it, e);
  auto& au = adj_[e.u];
  au.insert(std::lower_bound(au.begin(), au.end(), e.v), e.v);
  auto& av = adj_[e.v];
  av.insert(std::lower_bound(av.begin(), av.end(), e.u), e.u);
}

void Graph::add_edge(NodeId a, NodeId b, const Rational& w) {
  add_edge(a, b);
  set_weight(make_edge(a, b), w);
}

void Graph::set_weight(const Edge& e, const Rational& w) {
  if (!has_edge(e)) throw std::invalid_argument("weight for absent edge");
  if (w <= Rational(0)) throw std::invalid_argument("non-positive edge weight");
  weights_[e] = w;
}

bool Graph::has_edge(NodeId a, NodeId b) const {
  if (a < 0 || a >= n_ || b < 0 || b >= n_ || a == b) return false;
  Edge e = make_edge(a, b);
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

Rational Graph::weight(const Edge& e) const {
  if (!has_edge(e)) throw std::invalid_argument("weight of absent edge");
  auto it = weights_.find(e);
  return it == weights_.end() ? Rational(1) : it->second;
}

const std::vector<NodeId>& Graph::neighbors(NodeId v) const {
  check_node(v);
  return adj_[v];
}

int Graph::max_degree() const {
  int d = 0;
  for (NodeId v = 0; v < n_; ++v) d = std::max(d, degree(v));
  return d;
}

std::vector<int> Graph::bfs_distances(NodeId src) const {
  check_node(src);
  std::vector<int> dist(n_, -1);
  std::deque<NodeId> q{src};
  dist[src] = 0;
  while (!q.empty()) {
    NodeId u = q.front();
    q.pop_front();
    for (NodeId w : adj_[u])
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        q.push_back(w);
      }
  }
  return dist;
}

int Graph::diameter() const {
  int d = 0;
  for (NodeId v = 0; v < n_; ++v) {
    auto dist = bfs_distances(v);
    for (int x : dist)
      if (x < 0) return -1; else d = std::max(d, x);
  }
  return d;
}

void Graph::set_label(NodeId v, const std::string& role) {
  check_node(v);
  labels_[v] = role;
}

std::optional<std::string> Graph::label(NodeId v) const {
  auto it = labels_.find(v);
  if (it == labels_.end()) return std::nullopt;
  return it->second;
}

EdgeSet::EdgeSet(std::vector<Edge> edges) : edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

void EdgeSet::insert(const Edge& e) {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) edges_.insert(it, e);
}

bool EdgeSet::contains(const Edge& e) const {
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

Rational EdgeSet::total_weight(const Graph& g) const {
  Rational w(0);
  for (const Edge& e : edges_) w += g.weight(e);
  return w;
}

void Hypergraph::set_node_weight(int v, const Rational& w) {
  if (v < 0 || v >= n_) throw std::invalid_argument("hypergraph node out of range");
  if (w <= Rational(0)) throw std::invalid_argument("non-positive node weight");
  weights_[v] = w;
}

void Hypergraph::add_hyperedge(std::vector<int> nodes) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  for (int v : nodes)
    if (v < 0 || v >= n_) throw std::invalid_argument("hyperedge member out of range");
  if (nodes.empty()) throw std::invalid_argument("empty hyperedge");
  hyperedges_.push_back(std::move(nodes));
}

int Hypergraph::rank() const {
  size_t f = 0;
  for (const auto& he : hyperedges_) f = std::max(f, he.size());
  return static_cast<int>(f);
}

int Hypergraph::max_node_degree() const {
  std::vector<int> deg(n_, 0);
  for (const auto& he : hyperedges_)
    for (int v : he) ++deg[v];
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

std::vector<std::vector<int>> Hypergraph::node_incidence() const {
  std::vector<std::vector<int>> inc(n_);
  for (size_t i = 0; i < hyperedges_.size(); ++i)
    for (int v : hyperedges_[i]) inc[v].push_back(static_cast<int>(i));
  return inc;
}

std::vector<Triangle> enumerate_triangles(const Graph& g) {
  std::vector<Triangle> out;
  for (const Edge& e : g.edges()) {
    const auto& nu = g.neighbors(e.u);
    const auto& nv = g.neighbors(e.v);
    // common neighbors above v keep each triangle reported once
    size_t i = 0, j = 0;
    while (i < nu.size() && j < nv.size()) {
      if (nu[i] < nv[j]) ++i;
      else if (nv[j] < nu[i]) ++j;
      else {
        if (nu[i] > e.v) out.push_back(Triangle{e.u, e.v, nu[i]});
        ++i;
        ++j;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

BallResult ball(const Graph& g, NodeId v, int r) {
  g.check_node(v);
  if (r < 0) throw std::invalid_argument("negative radius");
  auto dist = g.bfs_distances(v);
  BallResult res;
  for (NodeId u = 0; u < g.node_count(); ++u)
    if (dist[u] >= 0 && dist[u] <= r) res.members.push_back(u);
  for (size_t i = 0; i < res.members.size(); ++i) res.to_local[res.members[i]] = static_cast<NodeId>(i);
  res.subgraph = Graph(static_cast<int>(res.members.size()));
  for (const Edge& e : g.edges()) {
    auto iu = res.to_local.find(e.u), iv = res.to_local.find(e.v);
    if (iu != res.to_local.end() && iv != res.to_local.end()) {
      if (g.weighted()) res.subgraph.add_edge(iu->second, iv->second, g.weight(e));
      else res.subgraph.add_edge(iu->second, iv->second);
    }
  }
  res.center_local = res.to_local.at(v);
  return res;
}

bool is_tet(const Graph& g, const EdgeSet& s) {
  for (const Edge& e : s.edges())
    if (!g.has_edge(e)) throw std::invalid_argument("cover edge not in graph");
  for (const Triangle& t : enumerate_triangles(g)) {
    bool hit = false;
    for (const Edge& e : t.edges())
      if (s.contains(e)) { hit = true; break; }
    if (!hit) return false;
  }
  return true;
}

namespace {

constexpr int kIsoNodeCap = 40;

struct RootedBall {
  Graph g;
  std::vector<int> dist;  // from center, in the ball
  NodeId center;
};

RootedBall rooted_ball(const Graph& g, NodeId v, int r) {
  auto b = ball(g, v, r);
  if (b.subgraph.node_count() > kIsoNodeCap)
    throw std::invalid_argument("ball too large for isomorphism check (cap 40 nodes)");
  RootedBall rb;
  rb.g = std::move(b.subgraph);
  rb.center = b.center_local;
  rb.dist = rb.g.bfs_distances(rb.center);
  return rb;
}

bool extend(const RootedBall& x, const RootedBall& y, std::vector<int>& map_xy,
            std::vector<int>& map_yx, int placed) {
  int n = x.g.node_count();
  if (placed == n) return true;
  // next unmapped node of x, preferring one adjacent to the mapped set
  int pick = -1;
  for (int u = 0; u < n && pick < 0; ++u) {
    if (map_xy[u] >= 0) continue;
    for (NodeId w : x.g.neighbors(u))
      if (map_xy[w] >= 0) { pick = u; break; }
  }
  if (pick < 0)
    for (int u = 0; u < n; ++u)
      if (map_xy[u] < 0) { pick = u; break; }

  for (int cand = 0; cand < n; ++cand) {
    if (map_yx[cand] >= 0) continue;
    if (y.dist[cand] != x.dist[pick]) continue;
    if (y.g.degree(cand) != x.g.degree(pick)) continue;
    bool ok = true;
    for (int u = 0; u < n && ok; ++u) {
      if (map_xy[u] < 0) continue;
      if (x.g.has_edge(pick, u) != y.g.has_edge(cand, map_xy[u])) ok = false;
    }
    if (!ok) continue;
    map_xy[pick] = cand;
    map_yx[cand] = pick;
    if (extend(x, y, map_xy, map_yx, placed + 1)) return true;
    map_xy[pick] = -1;
    map_yx[cand] = -1;
  }
  return false;
}

}  // namespace

bool ball_isomorphic(const Graph& g1, NodeId v1, const Graph& g2, NodeId v2, int r) {
  RootedBall x = rooted_ball(g1, v1, r);
  RootedBall y = rooted_ball(g2, v2, r);
  if (x.g.node_count() != y.g.node_count() || x.g.edge_count() != y.g.edge_count()) return false;
  {
    std::multiset<int> dx(x.dist.begin(), x.dist.end()), dy(y.dist.begin(), y.dist.end());
    if (dx != dy) return false;
  }
  int n = x.g.node_count();
  std::vector<int> map_xy(n, -1), map_yx(n, -1);
  map_xy[x.center] = y.center;
  map_yx[y.center] = x.center;
  if (x.g.degree(x.center) != y.g.degree(y.center)) return false;
  return extend(x, y, map_xy, map_yx, 1);
}

ReducedHypergraph reduced_hypergraph(const Graph& g) {
  ReducedHypergraph r;
  r.h = Hypergraph(g.edge_count());
  r.node_to_edge = g.edges();
  for (int i = 0; i < g.edge_count(); ++i) {
    r.edge_to_node[r.node_to_edge[i]] = i;
    if (g.weighted()) r.h.set_node_weight(i, g.weight(r.node_to_edge[i]));
  }
  for (const Triangle& t : enumerate_triangles(g)) {
    std::vector<int> members;
    for (const Edge& e : t.edges()) members.push_back(r.edge_to_node.at(e));
    r.triangle_to_hyperedge[t] = static_cast<int>(r.h.hyperedges().size());
    r.hyperedge_to_triangle.push_back(t);
    r.h.add_hyperedge(std::move(members));
  }
  return r;
}

}  // namespace mtet
