#include <chrono>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mtet/acceptance.hpp"
#include "mtet/approx_local.hpp"
#include "mtet/approx_mhvc.hpp"
#include "mtet/gadgets.hpp"
#include "mtet/io.hpp"
#include "mtet/lbgraph.hpp"
#include "mtet/oracle.hpp"
#include "mtet/simnet.hpp"

using nlohmann::json;
using namespace mtet;

namespace {

json base_report(const std::string& command) {
  json j;
  j["command"] = command;
  j["version"] = "1.0";
  return j;
}

void emit(json j, std::chrono::steady_clock::time_point t0, const std::string& out_path = "-") {
  j["wall_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (out_path == "-") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot open " + out_path);
    f << j.dump(2) << "\n";
  }
}

SimModel parse_model(const std::string& s) {
  if (s == "local") return SimModel::local();
  if (s == "congest") return SimModel::congest();
  if (s.rfind("congest:", 0) == 0) return SimModel::congest(std::stoi(s.substr(8)));
  throw CLI::ValidationError("--model", "expected local or congest[:BITS]");
}

json cover_json(const EdgeSet& s) { return edge_set_to_json(s); }

// flood-the-minimum-id demo program for `sim run`
class MinIdBehavior : public NodeBehavior {
 public:
  void init(const NodeContext& ctx) override {
    n_ = ctx.n;
    best_ = ctx.id;
  }
  bool on_round(int round, const std::vector<std::vector<Payload>>& inbox,
                std::vector<std::vector<Payload>>& outbox) override {
    for (const auto& q : inbox)
      for (const auto& msg : q) {
        NodeId v = 0;
        for (std::size_t b = 0; b < msg.size(); ++b) v |= (NodeId)msg[b] << (8 * b);
        best_ = std::min(best_, v);
      }
    if (round < n_) {
      Payload p;  // minimal little-endian byte encoding keeps the frame under budget
      NodeId v = best_;
      do {
        p.push_back((std::uint8_t)(v & 0xff));
        v >>= 8;
      } while (v != 0);
      for (auto& port : outbox) port.push_back(p);
      return false;
    }
    return true;
  }
  std::string output() const override { return std::to_string(best_); }

 private:
  int n_ = 0;
  NodeId best_ = 0;
};

json transcript_json(const RoundTranscript& tr) {
  json j;
  j["rounds"] = tr.rounds;
  j["max_edge_bits"] = tr.max_edge_bits;
  j["outputs"] = tr.outputs;
  j["per_round_message_counts"] = tr.per_round_message_count;
  return j;
}

json lb_sidecar(const LbInstance& inst) {
  json j;
  j["params"] = {{"k", inst.params.k},     {"mu", inst.params.mu}, {"L", inst.params.L},
                 {"K", inst.params.K},     {"M", inst.params.M},
                 {"tau_clique", inst.params.tau_clique}};
  json part = json::array();
  for (char c : inst.in_part_b) part.push_back(c ? "B" : "A");
  j["partition"] = std::move(part);
  json roles = json::object();
  for (const auto& [v, role] : inst.graph.labels()) roles[std::to_string(v)] = role;
  j["roles"] = std::move(roles);
  return j;
}

int run(int argc, char** argv) {
  auto t0 = std::chrono::steady_clock::now();
  CLI::App app{"triangle edge transversal toolkit: generators, exact solvers, "
               "approximations, round simulator, verifiers"};
  app.require_subcommand(1);
  std::string out_path = "-";
  app.add_option("-o,--output", out_path, "output file, - for stdout");
  app.fallthrough();

  // ---- gen ----
  auto* gen = app.add_subcommand("gen", "generate gadget and family graphs");
  gen->require_subcommand(1);
  int gen_t = 8, gen_k = 2;
  std::string gen_x, gen_y;
  auto* gen_line = gen->add_subcommand("line", "chain of t triangles");
  gen_line->add_option("--t", gen_t, "triangle count (even)")->required();
  auto* gen_ring = gen->add_subcommand("ring", "closed cycle of t triangles");
  gen_ring->add_option("--t", gen_t, "triangle count (even, >= 6)")->required();
  auto* gen_th1 = gen->add_subcommand("theorem1", "locally indistinguishable pair");
  gen_th1->add_option("--t", gen_t, "base chain length (multiple of 4)")->required();
  auto* gen_lb = gen->add_subcommand("lbgraph", "two-party lower-bound instance");
  gen_lb->add_option("--k", gen_k, "clique parameter")->required();
  gen_lb->add_option("--x", gen_x, "first input bit string");
  gen_lb->add_option("--y", gen_y, "second input bit string");

  // ---- solve-exact ----
  std::string graph_path;
  bool enumerate = false;
  int budget = 5000;
  auto* solve = app.add_subcommand("solve-exact", "exact minimum transversal");
  solve->add_option("--graph", graph_path, "graph JSON, - for stdin")->required();
  solve->add_flag("--enumerate", enumerate, "also count all optima");
  solve->add_option("--budget", budget, "triangle budget");

  // ---- approx ----
  auto* approx = app.add_subcommand("approx", "approximation algorithms");
  approx->require_subcommand(1);
  std::string eps_s = "1/2", variant = "matching", model_s = "local";
  std::uint64_t seed = 0;
  bool distributed = false;
  auto* carve = approx->add_subcommand("ball-carving", "(1+eps) cover by ball growing");
  carve->add_option("--graph", graph_path, "graph JSON, - for stdin")->required();
  carve->add_option("--eps", eps_s, "accuracy, rational or decimal")->required();
  carve->add_flag("--distributed", distributed, "cluster-phased mode with round accounting");
  carve->add_option("--seed", seed, "decomposition seed");
  auto* mhvc = approx->add_subcommand("mhvc", "cover via the triangle hypergraph");
  mhvc->add_option("--graph", graph_path, "graph JSON, - for stdin")->required();
  mhvc->add_option("--variant", variant, "matching | primal-dual");
  mhvc->add_option("--model", model_s, "local | congest[:BITS]");
  mhvc->add_option("--seed", seed, "program seed");

  // ---- sim ----
  auto* sim = app.add_subcommand("sim", "round-based simulator");
  auto* sim_run = sim->add_subcommand("run", "run a named program");
  std::string program = "triangles";
  sim_run->add_option("--graph", graph_path, "graph JSON, - for stdin")->required();
  sim_run->add_option("--program", program, "triangles | min-id");
  sim_run->add_option("--model", model_s, "local | congest[:BITS]");
  sim_run->add_option("--seed", seed, "global seed");

  // ---- verify ----
  auto* verify = app.add_subcommand("verify", "equivalence and acceptance suites");
  verify->require_subcommand(1);
  int samples = 30;
  bool structural_only = false;
  auto* v_lemma = verify->add_subcommand("lemma", "exact family equivalence");
  v_lemma->add_option("--k", gen_k, "clique parameter");
  v_lemma->add_option("--samples", samples, "input samples");
  v_lemma->add_option("--seed", seed, "sampling seed");
  auto* v_family = verify->add_subcommand("family", "structural family properties");
  v_family->add_option("--k", gen_k, "clique parameter");
  v_family->add_option("--samples", samples, "input samples");
  v_family->add_option("--seed", seed, "sampling seed");
  v_family->add_flag("--structural-only", structural_only, "skip exact solving");
  auto* v_all = verify->add_subcommand("all", "full acceptance suite");
  std::string profile = "desk";
  v_all->add_option("--profile", profile, "only 'desk' is defined");

  CLI11_PARSE(app, argc, argv);

  if (gen_line->parsed() || gen_ring->parsed() || gen_th1->parsed()) {
    if (gen_line->parsed()) {
      save_graph(make_line(gen_t).graph, out_path);
    } else if (gen_ring->parsed()) {
      save_graph(make_ring(gen_t).graph, out_path);
    } else {
      auto p = make_theorem1_pair(gen_t);
      json j = base_report("gen theorem1");
      j["g1"] = graph_to_json(p.g1);
      j["g2"] = graph_to_json(p.g2);
      j["probe1"] = p.probe1;
      j["probe2"] = p.probe2;
      j["radius"] = p.radius;
      j["diameters"] = {p.diameter1, p.diameter2};
      emit(std::move(j), t0, out_path);
    }
    return 0;
  }
  if (gen_lb->parsed()) {
    LbInstance inst = build_fixed(gen_k);
    if (!gen_x.empty() || !gen_y.empty()) inst = add_inputs(inst, gen_x, gen_y);
    json j = base_report("gen lbgraph");
    j["graph"] = graph_to_json(inst.graph);
    j.update(lb_sidecar(inst));
    emit(std::move(j), t0, out_path);
    return 0;
  }

  if (solve->parsed()) {
    Graph g = load_graph(graph_path);
    SolverOptions opts;
    opts.triangle_budget = budget;
    auto sol = tau(g, opts);
    json j = base_report("solve-exact");
    j["oracle"] = "branch-and-bound exact solver";
    j["value"] = format_rational(sol.value);
    j["cover"] = cover_json(sol.cover);
    j["optimal"] = sol.optimal;
    j["stats"] = {{"branches", sol.stats.branches}, {"seconds", sol.stats.elapsed_seconds}};
    if (enumerate) j["count"] = enumerate_min_tets(g, opts).size();
    emit(std::move(j), t0, out_path);
    return 0;
  }

  if (carve->parsed()) {
    Graph g = load_graph(graph_path);
    Rational eps = parse_rational(eps_s);
    json j = base_report("approx ball-carving");
    j["oracle"] = "per-ball exact solver plus audits";
    j["eps"] = eps_s;
    j["seed"] = seed;
    const CarveResult* res;
    DistributedCarveResult dres;
    CarveResult sres;
    if (distributed) {
      dres = ball_carve_distributed(g, eps, seed);
      res = &dres.carve;
      j["rounds"] = dres.accounted_rounds;
      j["decomposition"] = {{"c", dres.decomp.colors}, {"d", dres.decomp.max_weak_diameter}};
      j["matches_sequential"] = dres.matches_sequential;
    } else {
      std::vector<NodeId> order(g.node_count());
      for (int v = 0; v < g.node_count(); ++v) order[v] = v;
      sres = ball_carve_sequential(g, eps, order);
      res = &sres;
    }
    j["value"] = format_rational(res->value);
    j["cover"] = cover_json(res->cover);
    j["audits"] = {{"stopping", res->audit.stopping_ok},
                   {"regions_disjoint", res->audit.regions_disjoint_ok},
                   {"step_cap", res->audit.step_cap_ok},
                   {"cover_valid", res->audit.cover_valid}};
    bool ok = res->audit.ok() && (!distributed || dres.matches_sequential);
    emit(std::move(j), t0, out_path);
    return ok ? 0 : 1;
  }

  if (mhvc->parsed()) {
    Graph g = load_graph(graph_path);
    MhvcVariant var;
    if (variant == "matching")
      var = MhvcVariant::kMatching;
    else if (variant == "primal-dual")
      var = MhvcVariant::kPrimalDual;
    else
      throw CLI::ValidationError("--variant", "expected matching or primal-dual");
    auto res = mtet_via_mhvc(g, var, parse_model(model_s), seed);
    json j = base_report("approx mhvc");
    j["oracle"] = "hypergraph program on simulator, direct run cross-check";
    j["variant"] = variant;
    j["model"] = model_s;
    j["seed"] = seed;
    j["value"] = format_rational(res.value);
    j["cover"] = cover_json(res.cover);
    j["rounds"] = {{"simulated", res.report.simulated.simulated_rounds},
                   {"graph", res.report.simulated.graph_rounds}};
    j["cover_valid"] = res.valid;
    j["direct_matches_simulated"] = res.report.outputs_match;
    emit(std::move(j), t0, out_path);
    return res.valid && res.report.outputs_match ? 0 : 1;
  }

  if (sim_run->parsed()) {
    Graph g = load_graph(graph_path);
    SimModel model = parse_model(model_s);
    json j = base_report("sim run");
    j["program"] = program;
    j["model"] = model_s;
    j["seed"] = seed;
    if (program == "triangles") {
      auto res = triangle_discovery(g, model);
      j.update(transcript_json(res.transcript));
      json lists = json::array();
      for (const auto& per : res.per_node) {
        json l = json::array();
        for (const auto& t : per) l.push_back({t.a, t.b, t.c});
        lists.push_back(std::move(l));
      }
      j["triangles_per_node"] = std::move(lists);
    } else if (program == "min-id") {
      auto tr = mtet::run(
          g, [](NodeId) { return std::make_unique<MinIdBehavior>(); }, model, seed,
          4 * g.node_count() + 8);
      j.update(transcript_json(tr));
    } else {
      throw CLI::ValidationError("--program", "expected triangles or min-id");
    }
    emit(std::move(j), t0, out_path);
    return 0;
  }

  if (v_lemma->parsed() || v_family->parsed()) {
    bool exact = v_lemma->parsed() || !structural_only;
    auto rep = verify_family(gen_k, samples, seed, exact);
    json j = base_report(v_lemma->parsed() ? "verify lemma" : "verify family");
    j["oracle"] = "exact solver with substructure pruning; set-intersection reference";
    j["k"] = gen_k;
    j["samples"] = rep.samples;
    j["seed"] = seed;
    j["node_set_consistent"] = rep.node_set_consistent;
    j["x_edges_in_part_a"] = rep.x_edges_in_part_a;
    j["y_edges_in_part_b"] = rep.y_edges_in_part_b;
    j["exact_checked"] = rep.exact_checked;
    j["equivalence_ok"] = rep.equivalence_ok;
    if (!rep.counterexample.empty()) j["counterexample"] = rep.counterexample;
    emit(std::move(j), t0, out_path);
    return rep.ok() ? 0 : 1;
  }

  if (v_all->parsed()) {
    if (profile != "desk") throw CLI::ValidationError("--profile", "only 'desk' is defined");
    AcceptanceReport rep = run_acceptance(std::cerr);
    json j = base_report("verify all");
    json crits = json::array();
    for (const auto& c : rep.criteria)
      crits.push_back({{"id", c.id},
                       {"name", c.name},
                       {"passed", c.passed},
                       {"detail", c.detail},
                       {"seconds", c.seconds}});
    j["criteria"] = std::move(crits);
    j["all_passed"] = rep.all_passed();
    emit(std::move(j), t0, out_path);
    return rep.all_passed() ? 0 : 1;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::Error&) {
    return 2;  // parse errors already reported by CLI11_PARSE
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
}
