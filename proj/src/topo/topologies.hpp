#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "geometry/camera.hpp"
#include "graph/covis_graph.hpp"

namespace covision {

constexpr double kDefaultProximity = 3.0;
constexpr double kHighCovisThreshold = 0.50;

/// Edges from `center` (a node index) to every other node.
Adjacency star(std::size_t n, std::size_t center);

Adjacency complete(std::size_t n);

/// `edge_count` unordered pairs drawn uniformly without replacement.
Adjacency random_matched(std::size_t n, std::size_t edge_count, std::uint64_t seed);

/// Edge iff camera centers are within `distance` (inclusive).
Adjacency gt_proximity(std::span<const Pose> poses, double distance);

/// Edge iff d_ij >= 0.50. Unlike binarize, the boundary is inclusive.
Adjacency high_covis(const WeightMatrix& weights);

/// "i j" per line using node ids, sorted, one line per undirected edge.
std::string pair_list(const Adjacency& adjacency, std::span<const int> ids);

}  // namespace covision
