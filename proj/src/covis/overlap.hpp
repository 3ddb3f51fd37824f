#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "covis/voxel.hpp"
#include "geometry/camera.hpp"
#include "graph/covis_graph.hpp"

namespace covision {

constexpr double kDefaultResolution = 0.05;

struct PairDegree {
  int i = 0;
  int j = 0;
  double value = 0.0;
};

// Pixels of `source_view` whose surface cell is also observed by `other_view`.
struct CovisMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;
  int source_view = 0;
  int other_view = 0;

  bool at(int u, int v) const { return bits[static_cast<std::size_t>(v) * width + u] != 0; }
  std::size_t count() const;
  bool operator==(const CovisMask&) const = default;
};

SurfaceVoxelSet view_cells(const CameraView& view, const DepthImage& depth, double resolution);

PairDegree pair_degree(const CameraView& view_i, const DepthImage& depth_i, const CameraView& view_j,
                       const DepthImage& depth_j, double resolution);

CovisMask covis_mask(const CameraView& source, const DepthImage& source_depth,
                     const SurfaceVoxelSet& other_cells, int other_view);

// Ground truth over a view set: symmetric IoU weights, the graph binarized at
// tau, and a mask for every ordered pair with positive degree.
struct GroundTruth {
  CovisGraph graph;
  std::map<std::pair<int, int>, CovisMask> masks;  // keyed by (source id, other id)
};

GroundTruth compute_ground_truth(const std::vector<CameraView>& views, const std::vector<SurfaceVoxelSet>& cells,
                                 const std::vector<DepthImage>& depths, double tau, int jobs = 1);

}  // namespace covision
