#include "mtet/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace mtet {

nlohmann::json graph_to_json(const Graph& g) {
  nlohmann::json j;
  j["n"] = g.node_count();
  auto edges = nlohmann::json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  j["edges"] = std::move(edges);
  if (g.weighted()) {
    auto weights = nlohmann::json::array();
    for (const Edge& e : g.edges()) weights.push_back(format_rational(g.weight(e)));
    j["weights"] = std::move(weights);
  }
  if (!g.labels().empty()) {
    nlohmann::json labels = nlohmann::json::object();
    for (const auto& [v, role] : g.labels()) labels[std::to_string(v)] = role;
    j["labels"] = std::move(labels);
  }
  return j;
}

Graph graph_from_json(const nlohmann::json& j) {
  Graph g(j.at("n").get<int>());
  const auto& edges = j.at("edges");
  bool weighted = j.contains("weights");
  if (weighted && j["weights"].size() != edges.size())
    throw std::invalid_argument("weights array must align with the edge list");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    NodeId u = edges[i].at(0).get<NodeId>();
    NodeId v = edges[i].at(1).get<NodeId>();
    if (weighted)
      g.add_edge(u, v, parse_rational(j["weights"][i].get<std::string>()));
    else
      g.add_edge(u, v);
  }
  if (j.contains("labels"))
    for (const auto& [key, role] : j["labels"].items())
      g.set_label(std::stoi(key), role.get<std::string>());
  return g;
}

Graph load_graph(const std::string& path) {
  nlohmann::json j;
  if (path == "-") {
    std::cin >> j;
  } else {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    in >> j;
  }
  return graph_from_json(j);
}

void save_graph(const Graph& g, const std::string& path) {
  nlohmann::json j = graph_to_json(g);
  if (path == "-") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << j.dump(2) << "\n";
  }
}

nlohmann::json edge_set_to_json(const EdgeSet& s) {
  auto j = nlohmann::json::array();
  for (const Edge& e : s.edges()) j.push_back({e.u, e.v});
  return j;
}

EdgeSet edge_set_from_json(const nlohmann::json& j) {
  EdgeSet s;
  for (const auto& pair : j) s.insert(make_edge(pair.at(0).get<NodeId>(), pair.at(1).get<NodeId>()));
  return s;
}

}  // namespace mtet
