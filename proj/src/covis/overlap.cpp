#include "covis/overlap.hpp"

#include <algorithm>

#include "common/error.hpp"
#include "common/parallel.hpp"

namespace covision {

std::size_t CovisMask::count() const {
  return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

SurfaceVoxelSet view_cells(const CameraView& view, const DepthImage& depth, double resolution) {
  const auto points = backproject(depth, view);
  return voxelize(points, resolution);
}

PairDegree pair_degree(const CameraView& view_i, const DepthImage& depth_i, const CameraView& view_j,
                       const DepthImage& depth_j, double resolution) {
  const auto a = view_cells(view_i, depth_i, resolution);
  const auto b = view_cells(view_j, depth_j, resolution);
  return {view_i.id, view_j.id, surface_iou(a, b)};
}

CovisMask covis_mask(const CameraView& source, const DepthImage& source_depth,
                     const SurfaceVoxelSet& other_cells, int other_view) {
  const auto& k = source.intrinsics;
  require(source_depth.width == k.width && source_depth.height == k.height,
          "covis mask: depth does not match intrinsics of view " + std::to_string(source.id));
  CovisMask mask;
  mask.width = k.width;
  mask.height = k.height;
  mask.bits.assign(static_cast<std::size_t>(k.width) * k.height, 0);
  mask.source_view = source.id;
  mask.other_view = other_view;
  if (other_cells.empty()) return mask;
  for (int v = 0; v < k.height; ++v) {
    for (int u = 0; u < k.width; ++u) {
      const float d = source_depth.at(u, v);
      if (d <= 0.0f) continue;
      const Cell c = cell_of(backproject_pixel(source, u, v, d), other_cells.resolution());
      if (other_cells.contains(c)) mask.bits[static_cast<std::size_t>(v) * k.width + u] = 1;
    }
  }
  return mask;
}

GroundTruth compute_ground_truth(const std::vector<CameraView>& views, const std::vector<SurfaceVoxelSet>& cells,
                                 const std::vector<DepthImage>& depths, double tau, int jobs) {
  require(views.size() == cells.size() && views.size() == depths.size(),
          "ground truth: views, cells and depths must have equal length");
  const std::size_t n = views.size();
  GroundTruth gt;
  std::vector<int> ids;
  for (const auto& v : views) ids.push_back(v.id);
  gt.graph = CovisGraph(ids);

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<double> values(pairs.size());
  parallel_for(pairs.size(), jobs, [&](std::size_t p) {
    values[p] = surface_iou(cells[pairs[p].first], cells[pairs[p].second]);
  });
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    gt.graph.weights.set(pairs[p].first, pairs[p].second, values[p]);
  }
  gt.graph.set_threshold(tau);

  std::vector<std::pair<std::size_t, std::size_t>> ordered;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    if (values[p] > 0.0) {
      ordered.push_back(pairs[p]);
      ordered.emplace_back(pairs[p].second, pairs[p].first);
    }
  }
  std::vector<CovisMask> masks(ordered.size());
  parallel_for(ordered.size(), jobs, [&](std::size_t m) {
    const auto [s, o] = ordered[m];
    masks[m] = covis_mask(views[s], depths[s], cells[o], views[o].id);
  });
  for (auto& mask : masks) {
    const auto key = std::make_pair(mask.source_view, mask.other_view);
    gt.masks.emplace(key, std::move(mask));
  }
  return gt;
}

}  // namespace covision
