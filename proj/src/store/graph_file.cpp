#include "store/graph_file.hpp"

#include <algorithm>


#include "common/error.hpp"
#include "store/binary_io.hpp"

namespace covision {

using nlohmann::json;

json graph_to_json(const CovisGraph& graph) {
  json j;
  j["nodes"] = graph.ids;
  json weights = json::array();
  for (std::size_t a = 0; a < graph.size(); ++a)
    for (std::size_t b = a + 1; b < graph.size(); ++b)
      if (graph.weights.at(a, b) > 0.0) weights.push_back({graph.ids[a], graph.ids[b], graph.weights.at(a, b)});
  j["weights"] = std::move(weights);
  if (graph.tau) j["tau"] = *graph.tau;
  if (graph.adjacency) {
    json edges = json::array();
    for (const auto& [a, b] : graph.adjacency->edges()) edges.push_back({graph.ids[a], graph.ids[b]});
    j["edges"] = std::move(edges);
  }
  return j;
}

CovisGraph graph_from_json(const json& j, const std::string& origin) {
  try {
    CovisGraph g(j.at("nodes").get<std::vector<int>>());
    for (const auto& w : j.at("weights")) {
      if (!w.is_array() || w.size() != 3) fail(ErrorKind::Format, origin + ": weights must be [i, j, w] triples");
      const auto a = g.index_of(w[0].get<int>());
      const auto b = g.index_of(w[1].get<int>());
      const double value = w[2].get<double>();
      require(a != b, origin + ": self-pair in weights");
      require(value >= 0.0 && value <= 1.0, origin + ": weight outside [0, 1]");
      g.weights.set(a, b, value);
    }
    if (j.contains("tau")) g.tau = j.at("tau").get<double>();
    if (j.contains("edges")) {
      Adjacency adj(g.size());
      for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) fail(ErrorKind::Format, origin + ": edges must be [i, j] pairs");
        const auto a = g.index_of(e[0].get<int>());
        const auto b = g.index_of(e[1].get<int>());
        require(a != b, origin + ": self-loop in edges");
        adj.set(a, b);
      }
      g.adjacency = std::move(adj);
    }
    g.validate();
    return g;
  } catch (const json::exception& e) {
    fail(ErrorKind::Format, origin + ": malformed graph file (" + e.what() + ")");
  }
}

std::string encode_graph(const CovisGraph& graph) {
  return graph_to_json(graph).dump(2) + "\n";
}

void write_graph(const std::filesystem::path& path, const CovisGraph& graph) {
  write_file(path, encode_graph(graph));
}

CovisGraph read_graph(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::Format, path.string() + ": not valid JSON (" + e.what() + ")");
  }
  return graph_from_json(j, path.string());
}

CovisGraph align_nodes(const CovisGraph& graph, const CovisGraph& reference) {
  auto a = graph.ids;
  auto b = reference.ids;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  require(a == b, "graphs have different node sets");
  CovisGraph out(reference.ids);
  std::vector<std::size_t> map(reference.size());
  for (std::size_t k = 0; k < reference.size(); ++k) map[k] = graph.index_of(reference.ids[k]);
  for (std::size_t x = 0; x < out.size(); ++x)
    for (std::size_t y = x + 1; y < out.size(); ++y) out.weights.set(x, y, graph.weights.at(map[x], map[y]));
  out.tau = graph.tau;
  if (graph.adjacency) {
    Adjacency adj(out.size());
    for (std::size_t x = 0; x < out.size(); ++x)
      for (std::size_t y = x + 1; y < out.size(); ++y)
        if (graph.adjacency->edge(map[x], map[y])) adj.set(x, y);
    out.adjacency = std::move(adj);
  }
  return out;
}

Adjacency resolve_adjacency(const CovisGraph& graph, const double* tau_fallback) {
  if (graph.adjacency) return *graph.adjacency;
  if (tau_fallback) return binarize(graph.weights, *tau_fallback);
  if (graph.tau) return binarize(graph.weights, *graph.tau);
  fail(ErrorKind::InvalidInput, "graph has neither edges nor a threshold; pass tau explicitly");
}

}  // namespace covision
