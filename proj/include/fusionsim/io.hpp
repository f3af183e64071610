#pragma once

#include <string>

#include "fusionsim/graph_state.hpp"

#include "json.hpp"

namespace fusionsim {

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Graph JSON: {"n": int, "edges": [[u,v],...], "cliffords": {"3": "RH", ...}}.
// Missing clifford entries mean identity; an optional "dead" array carries
// tombstoned ids so fusion outputs keep their absolute qubit numbering.
nlohmann::json graph_to_json(const GraphState& g);
GraphState graph_from_json(const nlohmann::json& j);

std::string graph_to_json_string(const GraphState& g);
GraphState graph_from_json_string(const std::string& text);

GraphState load_graph_file(const std::string& path);
void save_graph_file(const GraphState& g, const std::string& path);

// Deterministic DOT: vertices ascending, edges sorted u<v lexicographically.
std::string graph_to_dot(const GraphState& g);

}  // namespace fusionsim
