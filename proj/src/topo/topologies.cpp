#include "topo/topologies.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "common/error.hpp"
#include "common/rng.hpp"

namespace covision {

Adjacency star(std::size_t n, std::size_t center) {
  require(n >= 1, "star: graph needs at least one node");
  require(center < n, "star: center " + std::to_string(center) + " is not a node");
  Adjacency a(n);
  for (std::size_t v = 0; v < n; ++v)
    if (v != center) a.set(center, v);
  return a;
}

Adjacency complete(std::size_t n) {
  Adjacency a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a.set(i, j);
  return a;
}

Adjacency random_matched(std::size_t n, std::size_t edge_count, std::uint64_t seed) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  require(edge_count <= pairs.size(), "random graph: requested " + std::to_string(edge_count) +
                                          " edges but only " + std::to_string(pairs.size()) + " pairs exist");
  Rng rng(seed);
  // Partial Fisher-Yates: the first edge_count slots are a uniform sample.
  for (std::size_t k = 0; k < edge_count; ++k) {
    const std::size_t pick = k + uniform_index(rng, pairs.size() - k);
    std::swap(pairs[k], pairs[pick]);
  }
  Adjacency a(n);
  for (std::size_t k = 0; k < edge_count; ++k) a.set(pairs[k].first, pairs[k].second);
  return a;
}

Adjacency gt_proximity(std::span<const Pose> poses, double distance) {
  require(std::isfinite(distance) && distance > 0.0, "proximity graph: distance must be positive");
  Adjacency a(poses.size());
  for (std::size_t i = 0; i < poses.size(); ++i)
    for (std::size_t j = i + 1; j < poses.size(); ++j)
      if ((poses[i].position - poses[j].position).norm() <= distance) a.set(i, j);
  return a;
}

Adjacency high_covis(const WeightMatrix& weights) {
  Adjacency a(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i)
    for (std::size_t j = i + 1; j < weights.size(); ++j)
      if (weights.at(i, j) >= kHighCovisThreshold) a.set(i, j);
  return a;
}

std::string pair_list(const Adjacency& adjacency, std::span<const int> ids) {
  require(ids.size() == adjacency.size(), "pair list: id count does not match node count");
  std::vector<std::pair<int, int>> pairs;
  for (const auto& [i, j] : adjacency.edges()) {
    pairs.emplace_back(std::min(ids[i], ids[j]), std::max(ids[i], ids[j]));
  }
  std::sort(pairs.begin(), pairs.end());
  std::ostringstream os;
  for (const auto& [i, j] : pairs) os << i << ' ' << j << '\n';
  return os.str();
}

}  // namespace covision
