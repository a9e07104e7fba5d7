#pragma once

#include <string>

#include "liyau/graph.hpp"

namespace liyau {

// Graph JSON format:
//   {"vertices": ["a", "b", ...],
//    "edges": [{"u": "a", "v": "b", "w": 1.0}, ...],
//    "mu": {"a": 1.0, ...} | "unit" | "degree"}
// "mu" may be omitted (defaults to 1 at every vertex). The loader rejects
// self-loops, duplicate edges (in particular duplicates with conflicting
// weights), nonpositive w or mu, and unknown endpoints.
WeightedGraph graph_from_json(const std::string& text);
WeightedGraph load_graph_file(const std::string& path);
std::string graph_to_json(const WeightedGraph& g);

// Resolves "preset:name(args)" via the preset catalog, otherwise treats the
// spec as a file path.
WeightedGraph resolve_graph_spec(const std::string& spec);

}  // namespace liyau
