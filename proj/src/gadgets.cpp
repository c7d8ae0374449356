#include "mtet/gadgets.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace mtet {

NodeId LineOfTriangles::v(int i) const {
  if (i < 0 || i > t / 2) throw std::out_of_range("line v index");
  return i;
}

NodeId LineOfTriangles::u(int i) const {
  if (i < 0 || i > t / 2) throw std::out_of_range("line u index");
  return t / 2 + 1 + i;
}

LineOfTriangles make_line(int t) {
  if (t < 2 || t % 2 != 0) throw std::invalid_argument("line length must be even and >= 2");
  LineOfTriangles line;
  line.t = t;
  int h = t / 2;
  Graph g(t + 2);
  auto v = [&](int i) { return i; };
  auto u = [&](int i) { return h + 1 + i; };
  for (int i = 0; i <= h; ++i) {
    g.set_label(v(i), "v" + std::to_string(i));
    g.set_label(u(i), "u" + std::to_string(i));
    g.add_edge(v(i), u(i));
  }
  for (int i = 0; i < h; ++i) {
    g.add_edge(v(i), v(i + 1));
    g.add_edge(u(i), u(i + 1));
    g.add_edge(v(i), u(i + 1));
  }
  line.graph = std::move(g);
  return line;
}

namespace {

// Walk the triangle-adjacency structure; fills order/shared if requested.
bool check_ring(const Graph& g, int t, std::vector<Triangle>* order,
                std::vector<Edge>* shared) {
  std::vector<Triangle> ts = enumerate_triangles(g);
  if (static_cast<int>(ts.size()) != t || t < 3) return false;
  // shared edges between each pair; every adjacency must be via exactly one edge
  std::vector<std::vector<int>> adj(ts.size());
  for (size_t i = 0; i < ts.size(); ++i) {
    for (size_t j = i + 1; j < ts.size(); ++j) {
      int common = 0;
      for (const Edge& e : ts[i].edges())
        if (ts[j].contains_edge(e)) ++common;
      if (common > 1) return false;
      if (common == 1) {
        adj[i].push_back(static_cast<int>(j));
        adj[j].push_back(static_cast<int>(i));
      }
    }
  }
  for (const auto& nb : adj)
    if (nb.size() != 2) return false;
  // single cycle through all t triangles
  std::vector<int> cycle{0};
  int prev = -1, cur = 0;
  do {
    int next = (adj[cur][0] == prev) ? adj[cur][1] : adj[cur][0];
    prev = cur;
    cur = next;
    if (cur != 0) cycle.push_back(cur);
  } while (cur != 0 && static_cast<int>(cycle.size()) <= t);
  if (cur != 0 || static_cast<int>(cycle.size()) != t) return false;
  if (order) {
    order->clear();
    shared->clear();
    for (int i = 0; i < t; ++i) {
      const Triangle& a = ts[cycle[i]];
      const Triangle& b = ts[cycle[(i + 1) % t]];
      order->push_back(a);
      for (const Edge& e : a.edges())
        if (b.contains_edge(e)) shared->push_back(e);
    }
  }
  return true;
}

}  // namespace

bool is_ring_of_triangles(const Graph& g, int t) {
  return check_ring(g, t, nullptr, nullptr);
}

std::optional<RingOfTriangles> recognize_ring(const Graph& g, int t) {
  RingOfTriangles ring;
  ring.t = t;
  if (!check_ring(g, t, &ring.triangle_order, &ring.shared_edges)) return std::nullopt;
  ring.graph = g;
  return ring;
}

RingOfTriangles make_ring(int t) {
  if (t < 6 || t % 2 != 0) throw std::invalid_argument("ring length must be even and >= 6");
  RingOfTriangles ring;
  ring.t = t;
  Graph g;
  if (t == 6) {
    // hub-and-rim realization; the line closure below would create accidental
    // rim triangles at this size
    g = Graph(7);
    g.set_label(0, "hub");
    for (int i = 0; i < 6; ++i) {
      g.set_label(1 + i, "c" + std::to_string(i));
      g.add_edge(0, 1 + i);
      g.add_edge(1 + i, 1 + (i + 1) % 6);
    }
  } else {
    // close a t-line by identifying v_{t/2} with v_0 and u_{t/2} with u_0
    int h = t / 2;
    g = Graph(t);
    auto v = [&](int i) { return i % h; };
    auto u = [&](int i) { return h + i % h; };
    for (int i = 0; i < h; ++i) {
      g.set_label(v(i), "v" + std::to_string(i));
      g.set_label(u(i), "u" + std::to_string(i));
      g.add_edge(v(i), u(i));
      g.add_edge(v(i), v(i + 1));
      g.add_edge(u(i), u(i + 1));
      g.add_edge(v(i), u(i + 1));
    }
  }
  if (!check_ring(g, t, &ring.triangle_order, &ring.shared_edges))
    throw std::logic_error("ring construction failed its own recognizer");
  ring.graph = std::move(g);
  return ring;
}

IndistinguishablePair make_theorem1_pair(int t) {
  if (t < 8 || t % 2 != 0) throw std::invalid_argument("pair length must be even and >= 8");
  int h = t / 2;
  IndistinguishablePair pair;

  LineOfTriangles base = make_line(t);
  Graph g1 = base.graph;
  // two pendant nodes on the diagonal {v_{h-1}, u_h} keep node counts equal
  // without changing the optimum
  NodeId w1 = t + 2, w2 = t + 3;
  g1.add_node();
  g1.add_node();
  g1.set_label(w1, "w1");
  g1.set_label(w2, "w2");
  g1.add_edge(w1, base.v(h - 1));
  g1.add_edge(w1, base.u(h));
  g1.add_edge(w2, base.v(h - 1));
  g1.add_edge(w2, base.u(h));

  LineOfTriangles longer = make_line(t + 2);
  Graph g2 = longer.graph;

  pair.probe1 = base.v(t / 4);
  pair.probe2 = longer.v(h - t / 4);
  pair.diameter1 = g1.diameter();
  pair.diameter2 = g2.diameter();
  pair.radius = pair.diameter1 / 2 - 1;

  auto pick_incident = [](const Graph& g, NodeId probe) {
    auto optima = enumerate_min_tets(g);
    if (optima.size() != 1) throw std::logic_error("expected a unique optimum");
    std::vector<Edge> incident;
    for (const Edge& e : optima[0].edges())
      if (e.u == probe || e.v == probe) incident.push_back(e);
    return EdgeSet(incident);
  };
  pair.probe_output1 = pick_incident(g1, pair.probe1);
  pair.probe_output2 = pick_incident(g2, pair.probe2);
  pair.g1 = std::move(g1);
  pair.g2 = std::move(g2);
  return pair;
}

}  // namespace mtet
