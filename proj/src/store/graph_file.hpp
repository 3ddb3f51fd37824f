#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "graph/covis_graph.hpp"

namespace covision {

// Graph file: JSON with sorted keys.
//   nodes:   [id, ...]
//   weights: [[i, j, w], ...] for the upper triangle with w > 0
//   tau:     optional threshold
//   edges:   optional [[i, j], ...] with i < j
nlohmann::json graph_to_json(const CovisGraph& graph);
CovisGraph graph_from_json(const nlohmann::json& j, const std::string& origin);

std::string encode_graph(const CovisGraph& graph);
void write_graph(const std::filesystem::path& path, const CovisGraph& graph);
CovisGraph read_graph(const std::filesystem::path& path);

/// Reorders `graph` to the node order of `reference`; node sets must match.
CovisGraph align_nodes(const CovisGraph& graph, const CovisGraph& reference);

/// The graph's adjacency, or its weights binarized at `tau_fallback`, or at
/// its own tau. Throws invalid-input if none is available.
Adjacency resolve_adjacency(const CovisGraph& graph, const double* tau_fallback);

}  // namespace covision
