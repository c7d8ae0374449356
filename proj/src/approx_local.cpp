#include "mtet/approx_local.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <random>
#include <set>

#include "mtet/simnet.hpp"

namespace mtet {

namespace {

Graph strip_edges(const Graph& base, const std::set<Edge>& removed) {
  Graph res(base.node_count());
  for (const Edge& e : base.edges())
    if (!removed.count(e)) {
      if (base.weighted())
        res.add_edge(e.u, e.v, base.weight(e));
      else
        res.add_edge(e.u, e.v);
    }
  return res;
}

std::vector<int> multi_source_distances(const Graph& g, const std::vector<NodeId>& sources) {
  std::vector<int> dist(g.node_count(), -1);
  std::queue<NodeId> q;
  for (NodeId s : sources) {
    dist[s] = 0;
    q.push(s);
  }
  while (!q.empty()) {
    NodeId v = q.front();
    q.pop();
    for (NodeId u : g.neighbors(v))
      if (dist[u] < 0) {
        dist[u] = dist[v] + 1;
        q.push(u);
      }
  }
  return dist;
}

}  // namespace

GValue g_value(const Graph& g, NodeId v, int r) {
  GValue out;
  if (r < 0) return out;
  g.check_node(v);
  auto dist = g.bfs_distances(v);
  auto inside = [&](NodeId u) { return dist[u] >= 0 && dist[u] <= r; };

  std::vector<Triangle> targets;
  for (const Triangle& t : enumerate_triangles(g))
    for (const Edge& e : t.edges())
      if (inside(e.u) && inside(e.v)) {
        targets.push_back(t);
        break;
      }
  if (targets.empty()) return out;

  std::vector<Edge> candidates;
  for (const Edge& e : g.edges())
    if (inside(e.u) || inside(e.v)) candidates.push_back(e);

  std::map<NodeId, NodeId> local;
  std::vector<NodeId> back;
  auto localize = [&](NodeId u) {
    auto it = local.find(u);
    if (it != local.end()) return it->second;
    NodeId id = (NodeId)back.size();
    local[u] = id;
    back.push_back(u);
    return id;
  };
  for (const Edge& e : candidates) {
    localize(e.u);
    localize(e.v);
  }
  Graph sub((int)back.size());
  for (const Edge& e : candidates) {
    if (g.weighted())
      sub.add_edge(local[e.u], local[e.v], g.weight(e));
    else
      sub.add_edge(local[e.u], local[e.v]);
  }
  SolverOptions opts;
  std::vector<Triangle> local_targets;
  for (const Triangle& t : targets)
    local_targets.push_back(make_triangle(local[t.a], local[t.b], local[t.c]));
  std::sort(local_targets.begin(), local_targets.end());
  opts.restrict_triangles = local_targets;
  auto sol = tau(sub, opts);
  out.value = sol.value;
  for (const Edge& e : sol.cover.edges()) out.witness.insert(make_edge(back[e.u], back[e.v]));
  return out;
}

int carve_step_cap(int edge_count, const Rational& eps) {
  double m = std::max(1, edge_count);
  double growth = 1.0 + to_double(eps);
  return (int)std::ceil(std::log(m) / std::log(growth)) + 2;
}

namespace {

BallRecord carve_one(const Graph& base, std::set<Edge>& removed, NodeId v, const Rational& eps,
                     int step_cap) {
  (void)step_cap;
  BallRecord rec;
  rec.center = v;
  Rational grow = Rational(1) + eps;
  GValue prev;
  int prev_r = -1;
  for (int r = 1;; r += 2) {
    Graph res = strip_edges(base, removed);
    ++rec.steps;
    GValue cur = g_value(res, v, r);
    if (cur.value <= grow * prev.value) {
      rec.radius = r;
      rec.value = cur.value;
      rec.prev_value = prev.value;
      rec.added_cover = cur.witness;
      auto dist = res.bfs_distances(v);
      for (const Edge& e : res.edges())
        if ((dist[e.u] >= 0 && dist[e.u] <= prev_r) || (dist[e.v] >= 0 && dist[e.v] <= prev_r))
          rec.core_region.push_back(e);
      for (const Edge& e : res.edges())
        if (dist[e.u] >= 0 && dist[e.u] <= r && dist[e.v] >= 0 && dist[e.v] <= r)
          removed.insert(e);
      return rec;
    }
    prev = std::move(cur);
    prev_r = r;
  }
}

CarveAudit audit_carve(const Graph& g, const CarveResult& res, const Rational& eps) {
  CarveAudit a;
  Rational grow = Rational(1) + eps;
  a.stopping_ok = true;
  for (const auto& b : res.balls)
    if (b.value > grow * b.prev_value) a.stopping_ok = false;
  a.step_cap_ok = true;
  for (const auto& b : res.balls)
    if (b.steps > res.step_cap) a.step_cap_ok = false;
  a.regions_disjoint_ok = true;
  std::set<Edge> seen;
  for (const auto& b : res.balls)
    for (const Edge& e : b.core_region)
      if (!seen.insert(e).second) a.regions_disjoint_ok = false;
  a.cover_valid = is_tet(g, res.cover);
  return a;
}

}  // namespace

CarveResult ball_carve_sequential(const Graph& g, const Rational& eps,
                                  const std::vector<NodeId>& order) {
  if ((int)order.size() != g.node_count())
    throw std::invalid_argument("order must list every node exactly once");
  CarveResult res;
  res.step_cap = carve_step_cap(g.edge_count(), eps);
  std::set<Edge> removed;
  for (NodeId v : order) {
    BallRecord rec = carve_one(g, removed, v, eps, res.step_cap);
    for (const Edge& e : rec.added_cover.edges()) res.cover.insert(e);
    res.balls.push_back(std::move(rec));
  }
  res.value = res.cover.total_weight(g);
  res.audit = audit_carve(g, res, eps);
  return res;
}

Decomposition network_decomposition(const Graph& g, int power, std::uint64_t seed) {
  const int n = g.node_count();
  Decomposition d;
  d.power = power;
  d.cluster_of.assign(n, -1);
  if (n == 0) {
    d.valid = true;
    return d;
  }

  std::vector<std::vector<NodeId>> pow_adj(n);
  for (NodeId v = 0; v < n; ++v) {
    auto dist = g.bfs_distances(v);
    for (NodeId u = 0; u < n; ++u)
      if (u != v && dist[u] >= 0 && dist[u] <= power) pow_adj[v].push_back(u);
  }

  std::vector<char> active(n, 1);
  int remaining = n;
  for (int color = 0; remaining > 0; ++color) {
    std::vector<char> avail = active;
    std::vector<NodeId> order;
    for (NodeId v = 0; v < n; ++v)
      if (active[v]) order.push_back(v);
    std::mt19937_64 rng(derive_seed(seed, 1000 + (std::uint64_t)color));
    std::shuffle(order.begin(), order.end(), rng);

    for (NodeId c : order) {
      if (!avail[c]) continue;
      // grow until the next shell at most doubles the ball
      std::vector<NodeId> ball{c};
      std::vector<char> in_ball(n, 0);
      in_ball[c] = 1;
      for (;;) {
        std::vector<NodeId> next = ball;
        std::vector<char> in_next = in_ball;
        for (NodeId u : ball)
          for (NodeId w : pow_adj[u])
            if (avail[w] && !in_next[w]) {
              in_next[w] = 1;
              next.push_back(w);
            }
        if (next.size() <= 2 * ball.size()) {
          int cid = (int)d.clusters.size();
          std::sort(ball.begin(), ball.end());
          for (NodeId u : ball) {
            d.cluster_of[u] = cid;
            active[u] = 0;
            avail[u] = 0;
            --remaining;
          }
          for (NodeId u : next)
            if (!in_ball[u]) avail[u] = 0;  // shell: deferred to the next color
          d.clusters.push_back(std::move(ball));
          d.color_of_cluster.push_back(color);
          break;
        }
        ball = std::move(next);
        in_ball = std::move(in_next);
      }
    }
    d.colors = color + 1;
  }

  // validity: full partition, proper coloring in the power graph, weak diameter
  d.valid = std::all_of(d.cluster_of.begin(), d.cluster_of.end(), [](int c) { return c >= 0; });
  for (NodeId v = 0; v < n && d.valid; ++v)
    for (NodeId u : pow_adj[v]) {
      int cv = d.cluster_of[v], cu = d.cluster_of[u];
      if (cv != cu && d.color_of_cluster[cv] == d.color_of_cluster[cu]) d.valid = false;
    }
  for (const auto& cluster : d.clusters) {
    for (NodeId s : cluster) {
      // BFS in the full power graph
      std::vector<int> dist(n, -1);
      std::queue<NodeId> q;
      dist[s] = 0;
      q.push(s);
      while (!q.empty()) {
        NodeId v = q.front();
        q.pop();
        for (NodeId u : pow_adj[v])
          if (dist[u] < 0) {
            dist[u] = dist[v] + 1;
            q.push(u);
          }
      }
      for (NodeId t : cluster) {
        if (dist[t] < 0) d.valid = false;
        d.max_weak_diameter = std::max(d.max_weak_diameter, dist[t]);
      }
    }
  }
  return d;
}

DistributedCarveResult ball_carve_distributed(const Graph& g, const Rational& eps,
                                              std::uint64_t seed) {
  const int n = g.node_count();
  DistributedCarveResult out;
  int step_cap = carve_step_cap(g.edge_count(), eps);
  int r_max = 2 * step_cap - 1;
  int power = std::min(std::max(1, 2 * r_max + 2), std::max(1, n));
  out.decomp = network_decomposition(g, power, seed);

  for (NodeId v = 0; v < n; ++v) out.order.push_back(v);
  std::sort(out.order.begin(), out.order.end(), [&](NodeId a, NodeId b) {
    int ca = out.decomp.color_of_cluster[out.decomp.cluster_of[a]];
    int cb = out.decomp.color_of_cluster[out.decomp.cluster_of[b]];
    return std::tie(ca, a) < std::tie(cb, b);
  });

  out.carve.step_cap = step_cap;
  std::set<Edge> removed;
  for (int color = 0; color < out.decomp.colors; ++color) {
    for (std::size_t cid = 0; cid < out.decomp.clusters.size(); ++cid) {
      if (out.decomp.color_of_cluster[cid] != color) continue;
      const auto& members = out.decomp.clusters[cid];
      Graph residual = strip_edges(g, removed);
      auto dist = multi_source_distances(residual, members);

      // local view: everything the leader can gather within r_max + 1 hops
      std::map<NodeId, NodeId> local;
      std::vector<NodeId> back;
      for (NodeId v = 0; v < n; ++v)
        if (dist[v] >= 0 && dist[v] <= r_max + 1) {
          local[v] = (NodeId)back.size();
          back.push_back(v);
        }
      Graph view((int)back.size());
      for (const Edge& e : residual.edges())
        if (local.count(e.u) && local.count(e.v)) {
          if (g.weighted())
            view.add_edge(local[e.u], local[e.v], g.weight(e));
          else
            view.add_edge(local[e.u], local[e.v]);
        }

      std::set<Edge> view_removed;
      long long max_ecc = 0;
      for (NodeId v : members) {
        BallRecord rec = carve_one(view, view_removed, local[v], eps, step_cap);
        // translate back to global ids
        BallRecord glob;
        glob.center = v;
        glob.radius = rec.radius;
        glob.steps = rec.steps;
        glob.value = rec.value;
        glob.prev_value = rec.prev_value;
        for (const Edge& e : rec.added_cover.edges()) {
          Edge ge = make_edge(back[e.u], back[e.v]);
          glob.added_cover.insert(ge);
          out.carve.cover.insert(ge);
        }
        for (const Edge& e : rec.core_region)
          glob.core_region.push_back(make_edge(back[e.u], back[e.v]));
        out.carve.balls.push_back(std::move(glob));
      }
      for (const Edge& e : view_removed) removed.insert(make_edge(back[e.u], back[e.v]));

      auto gdist = multi_source_distances(g, {members[0]});
      for (NodeId v : members) max_ecc = std::max<long long>(max_ecc, gdist[v]);
      out.accounted_rounds += 2 * (max_ecc + r_max + 1);
    }
  }
  out.carve.value = out.carve.cover.total_weight(g);
  out.carve.audit = audit_carve(g, out.carve, eps);

  // decomposition cost, leader model: each color floods at most power *
  // (log2 n + 1) hops to grow and announce its clusters
  int logn = 1;
  while ((1 << logn) < std::max(2, n)) ++logn;
  out.accounted_rounds += (long long)out.decomp.colors * power * (logn + 1);

  auto seq = ball_carve_sequential(g, eps, out.order);
  out.sequential_value = seq.value;
  out.matches_sequential = seq.value == out.carve.value && seq.cover == out.carve.cover;
  return out;
}

}  // namespace mtet
