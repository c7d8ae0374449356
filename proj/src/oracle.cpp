#include "mtet/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <map>
#include <set>

namespace mtet {

namespace {

struct TetSearch {
  const Graph* g = nullptr;
  std::vector<Triangle> triangles;
  std::vector<Edge> edges;
  std::map<Edge, int> edge_index;
  std::vector<Rational> edge_weight;
  std::vector<std::vector<int>> edge_triangles;   // edge -> triangle ids
  std::vector<std::array<int, 3>> triangle_edges; // triangle -> edge ids
  std::vector<int> edge_bound_id;                 // -1 if in no substructure
  std::vector<SubstructureBound> bounds;

  std::vector<char> chosen, excluded;
  std::vector<int> cover_count;  // per triangle
  int uncovered = 0;
  Rational current_weight{0};

  std::optional<Rational> best;
  std::vector<int> chosen_stack;
  EdgeSet best_cover;

  // enumeration
  bool enumerating = false;
  Rational enum_target{0};
  long long enum_cap = 0;
  std::vector<EdgeSet>* found = nullptr;

  // decision
  std::optional<Rational> decision_target;
  bool decision_hit = false;

  SolverStats stats;
  std::optional<Rational> root_bound;

  void init(const Graph& graph, const SolverOptions& opts) {
    g = &graph;
    triangles = opts.restrict_triangles ? *opts.restrict_triangles : enumerate_triangles(graph);
    if (static_cast<int>(triangles.size()) > opts.triangle_budget)
      throw std::runtime_error("triangle budget exceeded: " + std::to_string(triangles.size()));
    edges = graph.edges();
    for (size_t i = 0; i < edges.size(); ++i) edge_index[edges[i]] = static_cast<int>(i);
    edge_weight.resize(edges.size());
    for (size_t i = 0; i < edges.size(); ++i) edge_weight[i] = graph.weight(edges[i]);
    edge_triangles.assign(edges.size(), {});
    triangle_edges.resize(triangles.size());
    for (size_t t = 0; t < triangles.size(); ++t) {
      auto es = triangles[t].edges();
      for (int j = 0; j < 3; ++j) {
        int ei = edge_index.at(es[j]);
        triangle_edges[t][j] = ei;
        edge_triangles[ei].push_back(static_cast<int>(t));
      }
    }
    bounds = opts.bounds;
    edge_bound_id.assign(edges.size(), -1);
    for (size_t b = 0; b < bounds.size(); ++b) {
      for (const Edge& e : bounds[b].edges) {
        auto it = edge_index.find(e);
        if (it == edge_index.end())
          throw std::invalid_argument("substructure bound edge not in graph");
        if (edge_bound_id[it->second] != -1)
          throw std::invalid_argument("substructure bounds must be edge-disjoint");
        edge_bound_id[it->second] = static_cast<int>(b);
      }
    }
    tri_bound_id.assign(triangles.size(), -1);
    for (size_t t = 0; t < triangles.size(); ++t) {
      int b0 = edge_bound_id[triangle_edges[t][0]];
      if (b0 >= 0 && edge_bound_id[triangle_edges[t][1]] == b0 &&
          edge_bound_id[triangle_edges[t][2]] == b0)
        tri_bound_id[t] = b0;
    }
    chosen.assign(edges.size(), 0);
    excluded.assign(edges.size(), 0);
    cover_count.assign(triangles.size(), 0);
    uncovered = static_cast<int>(triangles.size());
    for (const Edge& e : opts.forced_out) {
      auto it = edge_index.find(e);
      if (it == edge_index.end()) throw std::invalid_argument("forced-out edge not in graph");
      excluded[it->second] = 1;
    }
    for (const Edge& e : opts.forced_in) {
      auto it = edge_index.find(e);
      if (it == edge_index.end()) throw std::invalid_argument("forced-in edge not in graph");
      if (excluded[it->second]) throw std::invalid_argument("edge both forced in and out");
      if (!chosen[it->second]) include(it->second);
    }
    decision_target = opts.decision_target;
  }

  void include(int ei) {
    chosen[ei] = 1;
    chosen_stack.push_back(ei);
    current_weight += edge_weight[ei];
    for (int t : edge_triangles[ei])
      if (cover_count[t]++ == 0) --uncovered;
  }

  void undo_include(int ei) {
    chosen[ei] = 0;
    chosen_stack.pop_back();
    current_weight -= edge_weight[ei];
    for (int t : edge_triangles[ei])
      if (--cover_count[t] == 0) ++uncovered;
  }

  struct BoundInfo {
    Rational lb{0};
    // per edge: true when including it provably raises the bound by its full
    // weight (saturated substructure, no uncovered local triangle uses it)
    std::vector<char> full_cost;
  };
  std::vector<int> tri_bound_id;  // triangle fully inside substructure b, else -1

  // Lower bound on the total weight of any completion of the current partial
  // assignment: chosen weight + remaining substructure needs + a greedy
  // edge-disjoint packing of uncovered triangles outside the substructures.
  // Returns nullopt if the partial assignment cannot be completed.
  std::optional<BoundInfo> lower_bound() {
    Rational lb = current_weight;
    std::vector<int> need(bounds.size(), 0);
    std::vector<int> have(bounds.size(), 0), avail(bounds.size(), 0);
    std::vector<Rational> cheapest(bounds.size(), Rational(0));
    std::vector<char> cheapest_set(bounds.size(), 0);
    for (size_t ei = 0; ei < edges.size(); ++ei) {
      int b = edge_bound_id[ei];
      if (b < 0) continue;
      if (chosen[ei]) ++have[b];
      else if (!excluded[ei]) {
        ++avail[b];
        if (!cheapest_set[b] || edge_weight[ei] < cheapest[b]) {
          cheapest[b] = edge_weight[ei];
          cheapest_set[b] = 1;
        }
      }
    }
    for (size_t b = 0; b < bounds.size(); ++b) {
      need[b] = std::max(0, bounds[b].local_tau - have[b]);
      if (need[b] > avail[b]) return std::nullopt;
    }
    // Greedy edge-disjoint packing of uncovered triangles. Triangles fully
    // inside one substructure are packed per substructure; the substructure
    // then contributes the larger of its packing and its residual demand.
    // Triangles touching substructure edges but not contained in one are
    // skipped entirely (their cost may overlap the residual).
    std::vector<Rational> internal_pack(bounds.size(), Rational(0));
    std::vector<char> in_uncovered_internal(edges.size(), 0);
    std::vector<char> edge_used(edges.size(), 0);
    for (size_t t = 0; t < triangles.size(); ++t) {
      if (cover_count[t] > 0) continue;
      bool packable = true;
      std::optional<Rational> cheap;
      int candidates = 0;
      for (int ei : triangle_edges[t]) {
        if (edge_used[ei]) packable = false;
        if (!excluded[ei]) {
          ++candidates;
          if (!cheap || edge_weight[ei] < *cheap) cheap = edge_weight[ei];
        }
      }
      if (candidates == 0) return std::nullopt;  // triangle impossible to cover
      int tb = tri_bound_id[t];
      if (tb >= 0)
        for (int ei : triangle_edges[t]) in_uncovered_internal[ei] = 1;
      bool crosses_substructure = false;
      if (tb < 0)
        for (int ei : triangle_edges[t])
          if (edge_bound_id[ei] >= 0) crosses_substructure = true;
      if (!packable || crosses_substructure) continue;
      if (tb >= 0) internal_pack[tb] += *cheap;
      else lb += *cheap;
      for (int ei : triangle_edges[t]) edge_used[ei] = 1;
    }
    for (size_t b = 0; b < bounds.size(); ++b)
      lb += std::max(Rational(need[b]) * cheapest[b], internal_pack[b]);
    BoundInfo info;
    info.lb = lb;
    info.full_cost.assign(edges.size(), 0);
    for (size_t ei = 0; ei < edges.size(); ++ei) {
      int b = edge_bound_id[ei];
      info.full_cost[ei] =
          b >= 0 && need[b] == 0 && internal_pack[b] == Rational(0) && !in_uncovered_internal[ei];
    }
    return info;
  }

  // Uncovered triangle with fewest non-excluded edges; -1 if all covered.
  int pick_triangle() const {
    int best_t = -1, best_c = 4;
    for (size_t t = 0; t < triangles.size(); ++t) {
      if (cover_count[t] > 0) continue;
      int c = 0;
      for (int ei : triangle_edges[t])
        if (!excluded[ei]) ++c;
      if (c < best_c) {
        best_c = c;
        best_t = static_cast<int>(t);
        if (c <= 1) break;
      }
    }
    return best_t;
  }

  void record_solution() {
    std::vector<Edge> cover;
    for (int ei : chosen_stack) cover.push_back(edges[ei]);
    EdgeSet es(std::move(cover));
    if (enumerating) {
      if (current_weight == enum_target) {
        found->push_back(std::move(es));
        if (static_cast<long long>(found->size()) > enum_cap)
          throw std::runtime_error("enumeration cap exceeded");
      }
      return;
    }
    if (!best || current_weight < *best ||
        (current_weight == *best && es < best_cover)) {
      best = current_weight;
      best_cover = std::move(es);
    }
  }

  bool prune(const Rational& lb) const {
    if (decision_target) return lb > *decision_target;
    if (enumerating) return lb > enum_target;
    return best && lb >= *best;
  }

  void search() {
    ++stats.branches;
    std::vector<int> propagated;  // edges excluded by saturation at this node
    auto restore = [&] {
      for (int ei : propagated) excluded[ei] = 0;
    };
    // Propagation loop: an edge of an already-saturated substructure raises
    // the bound by exactly its weight (it changes no residual and no packed
    // triangle), so it can be excluded whenever that provably hits the prune
    // threshold. Exclusions can tighten the bound, so iterate to a fixpoint.
    std::optional<BoundInfo> info;
    while (true) {
      info = lower_bound();
      if (!info || prune(info->lb)) {
        restore();
        return;
      }
      std::optional<Rational> threshold;  // exclude e when lb + w_e "beats" it
      bool strict = false;                // prune rule uses >= (optimization)
      if (decision_target) threshold = *decision_target;
      else if (enumerating) threshold = enum_target;
      else if (best) { threshold = *best; strict = true; }
      if (!threshold) break;
      bool changed = false;
      for (size_t ei = 0; ei < edges.size(); ++ei) {
        if (chosen[ei] || excluded[ei] || !info->full_cost[ei]) continue;
        Rational would = info->lb + edge_weight[ei];
        if (strict ? (would >= *threshold) : (would > *threshold)) {
          excluded[ei] = 1;
          propagated.push_back(static_cast<int>(ei));
          changed = true;
        }
      }
      if (!changed) break;
    }
    if (!root_bound) root_bound = info->lb;
    if (uncovered == 0) {
      if (decision_target) {
        if (current_weight <= *decision_target) decision_hit = true;
      } else {
        record_solution();
      }
      restore();
      return;
    }
    if (decision_target && decision_hit) {
      restore();
      return;
    }
    int t = pick_triangle();
    std::vector<int> cands;
    for (int ei : triangle_edges[t])
      if (!excluded[ei]) cands.push_back(ei);
    std::sort(cands.begin(), cands.end());  // lexicographic edge order
    std::vector<int> temporarily_excluded;
    for (int ei : cands) {
      include(ei);
      search();
      undo_include(ei);
      if (decision_target && decision_hit) break;
      excluded[ei] = 1;
      temporarily_excluded.push_back(ei);
    }
    for (int ei : temporarily_excluded) excluded[ei] = 0;
    restore();
  }
};

TetSearch run_search(const Graph& g, const SolverOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  TetSearch s;
  s.init(g, opts);
  s.search();
  s.stats.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return s;
}

}  // namespace

CoverSolution tau(const Graph& g, const SolverOptions& opts) {
  SolverOptions o = opts;
  o.decision_target.reset();
  TetSearch s = run_search(g, o);
  if (!s.best) throw std::runtime_error("no feasible transversal under the given constraints");
  if (opts.audit_bounds && s.root_bound && *s.root_bound > *s.best)
    throw std::logic_error("bound audit failed: root bound exceeds optimum");
  CoverSolution sol;
  sol.cover = s.best_cover;
  sol.value = *s.best;
  sol.optimal = true;
  sol.stats = s.stats;
  return sol;
}

bool tau_at_most(const Graph& g, const Rational& target, const SolverOptions& opts) {
  SolverOptions o = opts;
  o.decision_target = target;
  TetSearch s = run_search(g, o);
  return s.decision_hit;
}

std::vector<EdgeSet> enumerate_min_tets(const Graph& g, const SolverOptions& opts) {
  CoverSolution opt = tau(g, opts);
  SolverOptions o = opts;
  o.decision_target.reset();
  auto t0 = std::chrono::steady_clock::now();
  TetSearch s;
  s.init(g, o);
  std::vector<EdgeSet> out;
  s.enumerating = true;
  s.enum_target = opt.value;
  s.enum_cap = opts.enumeration_cap;
  s.found = &out;
  s.search();
  (void)t0;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

bool decision_tet(const Graph& g, const SolverOptions& base, const std::vector<Edge>& forced_in,
                  const Rational& target) {
  SolverOptions o = base;
  o.forced_in.insert(o.forced_in.end(), forced_in.begin(), forced_in.end());
  o.decision_target = target;
  try {
    TetSearch s = run_search(g, o);
    return s.decision_hit;
  } catch (const std::invalid_argument&) {
    throw;
  }
}

// All q-subsets of `items`, invoking f; stops early when f returns true.
bool any_subset(const std::vector<NodeId>& items, int q,
                const std::function<bool(const std::vector<NodeId>&)>& f) {
  std::vector<int> idx(q);
  for (int i = 0; i < q; ++i) idx[i] = i;
  int n = static_cast<int>(items.size());
  if (q > n) return false;
  while (true) {
    std::vector<NodeId> sub;
    for (int i : idx) sub.push_back(items[i]);
    if (f(sub)) return true;
    int i = q - 1;
    while (i >= 0 && idx[i] == n - q + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < q; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

int mu(const Graph& g, NodeId v, const SolverOptions& opts) {
  g.check_node(v);
  try {
    auto optima = enumerate_min_tets(g, opts);
    int best = 0;
    for (const EdgeSet& s : optima) {
      int c = 0;
      for (const Edge& e : s.edges())
        if (e.u == v || e.v == v) ++c;
      best = std::max(best, c);
    }
    return best;
  } catch (const std::runtime_error&) {
    // cap hit: decide "is there an optimum with >= q edges at v" instead
    Rational opt_value = tau(g, opts).value;
    int lo = 0, hi = g.degree(v);
    auto feasible = [&](int q) {
      if (q == 0) return true;
      std::vector<NodeId> nb = g.neighbors(v);
      return any_subset(nb, q, [&](const std::vector<NodeId>& sub) {
        std::vector<Edge> forced;
        for (NodeId u : sub) forced.push_back(make_edge(v, u));
        return decision_tet(g, opts, forced, opt_value);
      });
    };
    while (lo < hi) {
      int mid = (lo + hi + 1) / 2;
      if (feasible(mid)) lo = mid; else hi = mid - 1;
    }
    return lo;
  }
}

Graph complete_graph(int n) {
  Graph g(n);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

CliqueProfile clique_profile(int n, const SolverOptions& opts) {
  if (n < 3) throw std::invalid_argument("clique profile needs n >= 3");
  Graph g = complete_graph(n);
  CliqueProfile p;
  p.n = n;
  CoverSolution sol = tau(g, opts);
  if (sol.value.denominator() != 1) throw std::logic_error("non-integral clique tau");
  p.tau = static_cast<int>(sol.value.numerator());
  p.witness_covers = enumerate_min_tets(g, opts);
  p.mu = mu(g, 0, opts);
  return p;
}

EdgeSet map_cover(const Graph& g, const EdgeSet& s, const std::vector<NodeId>& perm) {
  if (static_cast<int>(perm.size()) != g.node_count())
    throw std::invalid_argument("permutation size mismatch");
  std::vector<char> seen(perm.size(), 0);
  for (NodeId x : perm) {
    if (x < 0 || x >= g.node_count() || seen[x]) throw std::invalid_argument("not a permutation");
    seen[x] = 1;
  }
  std::vector<Edge> mapped;
  for (const Edge& e : s.edges()) {
    if (!g.has_edge(e)) throw std::invalid_argument("cover edge not in graph");
    Edge m = make_edge(perm[e.u], perm[e.v]);
    if (!g.has_edge(m))
      throw std::invalid_argument("mapped pair is not an edge of the graph");
    mapped.push_back(m);
  }
  return EdgeSet(std::move(mapped));
}

namespace {

SolverOptions forced_incidence_options(int n, NodeId v, const std::vector<NodeId>& neighbors,
                                       const SolverOptions& opts, int* tau_out) {
  CliqueProfile p = clique_profile(n, opts);
  if (static_cast<int>(neighbors.size()) != p.mu)
    throw std::invalid_argument("neighbor set must have exactly mu_n elements");
  complete_graph(n).check_node(v);
  std::set<NodeId> nb(neighbors.begin(), neighbors.end());
  if (nb.count(v) || static_cast<int>(nb.size()) != p.mu)
    throw std::invalid_argument("invalid neighbor set");
  SolverOptions o = opts;
  o.decision_target.reset();
  for (NodeId u : nb) o.forced_in.push_back(make_edge(v, u));
  for (NodeId u = 0; u < n; ++u)
    if (u != v && !nb.count(u)) o.forced_out.push_back(make_edge(v, u));
  *tau_out = p.tau;
  return o;
}

}  // namespace

bool forced_cover_exists(int n, NodeId v, const std::vector<NodeId>& neighbors,
                         const SolverOptions& opts) {
  int t = 0;
  SolverOptions o = forced_incidence_options(n, v, neighbors, opts, &t);
  o.decision_target = Rational(t);
  TetSearch s = run_search(complete_graph(n), o);
  return s.decision_hit;
}

EdgeSet forced_cover_witness(int n, NodeId v, const std::vector<NodeId>& neighbors,
                             const SolverOptions& opts) {
  int t = 0;
  SolverOptions o = forced_incidence_options(n, v, neighbors, opts, &t);
  CoverSolution sol = tau(complete_graph(n), o);
  if (sol.value != Rational(t))
    throw std::runtime_error("no optimal transversal has the requested incidence");
  return sol.cover;
}

namespace {

struct MhvcSearch {
  const Hypergraph* h = nullptr;
  std::vector<std::vector<int>> incidence;  // node -> hyperedge ids
  std::vector<char> chosen, excluded;
  std::vector<int> cover_count;
  int uncovered = 0;
  Rational current_weight{0};
  std::optional<Rational> best;
  std::vector<int> chosen_stack, best_cover;
  SolverStats stats;

  void include(int v) {
    chosen[v] = 1;
    chosen_stack.push_back(v);
    current_weight += h->node_weight(v);
    for (int e : incidence[v])
      if (cover_count[e]++ == 0) --uncovered;
  }
  void undo_include(int v) {
    chosen[v] = 0;
    chosen_stack.pop_back();
    current_weight -= h->node_weight(v);
    for (int e : incidence[v])
      if (--cover_count[e] == 0) ++uncovered;
  }

  std::optional<Rational> lower_bound() {
    Rational lb = current_weight;
    std::vector<char> node_used(h->node_count(), 0);
    const auto& hes = h->hyperedges();
    for (size_t e = 0; e < hes.size(); ++e) {
      if (cover_count[e] > 0) continue;
      bool packable = true;
      std::optional<Rational> cheap;
      int cands = 0;
      for (int v : hes[e]) {
        if (node_used[v]) packable = false;
        if (!excluded[v]) {
          ++cands;
          if (!cheap || h->node_weight(v) < *cheap) cheap = h->node_weight(v);
        }
      }
      if (cands == 0) return std::nullopt;
      if (packable) {
        lb += *cheap;
        for (int v : hes[e]) node_used[v] = 1;
      }
    }
    return lb;
  }

  void search() {
    ++stats.branches;
    auto lb = lower_bound();
    if (!lb || (best && *lb >= *best)) return;
    if (uncovered == 0) {
      std::vector<int> cover = chosen_stack;
      std::sort(cover.begin(), cover.end());
      if (!best || current_weight < *best || (current_weight == *best && cover < best_cover)) {
        best = current_weight;
        best_cover = std::move(cover);
      }
      return;
    }
    const auto& hes = h->hyperedges();
    int pick = -1;
    size_t best_c = std::numeric_limits<size_t>::max();
    for (size_t e = 0; e < hes.size(); ++e) {
      if (cover_count[e] > 0) continue;
      size_t c = 0;
      for (int v : hes[e])
        if (!excluded[v]) ++c;
      if (c < best_c) { best_c = c; pick = static_cast<int>(e); }
    }
    std::vector<int> cands;
    for (int v : hes[pick])
      if (!excluded[v]) cands.push_back(v);
    std::vector<int> temp;
    for (int v : cands) {
      include(v);
      search();
      undo_include(v);
      excluded[v] = 1;
      temp.push_back(v);
    }
    for (int v : temp) excluded[v] = 0;
  }
};

}  // namespace

HypergraphCoverSolution exact_mhvc(const Hypergraph& h, const SolverOptions& opts) {
  if (static_cast<int>(h.hyperedges().size()) > opts.triangle_budget)
    throw std::runtime_error("hyperedge budget exceeded");
  auto t0 = std::chrono::steady_clock::now();
  MhvcSearch s;
  s.h = &h;
  s.incidence = h.node_incidence();
  s.chosen.assign(h.node_count(), 0);
  s.excluded.assign(h.node_count(), 0);
  s.cover_count.assign(h.hyperedges().size(), 0);
  s.uncovered = static_cast<int>(h.hyperedges().size());
  s.search();
  if (!s.best) throw std::runtime_error("infeasible hypergraph cover");
  HypergraphCoverSolution sol;
  sol.cover = s.best_cover;
  sol.value = *s.best;
  sol.optimal = true;
  sol.stats = s.stats;
  sol.stats.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return sol;
}

}  // namespace mtet
