#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "mtet/graph.hpp"

namespace mtet {

// Graph JSON: {"n": int, "edges": [[u,v], ...], "weights": ["p/q", ...]?,
// "labels": {"id": "role", ...}?}. Weights align with the edge list.
nlohmann::json graph_to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);

// path "-" reads stdin / writes stdout
Graph load_graph(const std::string& path);
void save_graph(const Graph& g, const std::string& path);

nlohmann::json edge_set_to_json(const EdgeSet& s);
EdgeSet edge_set_from_json(const nlohmann::json& j);

}  // namespace mtet
