#include "covis/voxel.hpp"

#include <algorithm>
#include <cmath>

#include "common/error.hpp"

namespace covision {

Cell cell_of(const Eigen::Vector3d& point, double resolution) {
  return {static_cast<std::int32_t>(std::floor(point.x() / resolution)),
          static_cast<std::int32_t>(std::floor(point.y() / resolution)),
          static_cast<std::int32_t>(std::floor(point.z() / resolution))};
}

SurfaceVoxelSet::SurfaceVoxelSet(double resolution, std::vector<Cell> cells)
    : resolution_(resolution), cells_(std::move(cells)) {
  std::sort(cells_.begin(), cells_.end());
  cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
}

bool SurfaceVoxelSet::contains(const Cell& c) const {
  return std::binary_search(cells_.begin(), cells_.end(), c);
}

SurfaceVoxelSet voxelize(std::span<const Eigen::Vector3d> points, double resolution) {
  require(std::isfinite(resolution) && resolution > 0.0, "voxelize: resolution must be positive");
  std::vector<Cell> cells;
  cells.reserve(points.size());
  for (const auto& p : points) cells.push_back(cell_of(p, resolution));
  return SurfaceVoxelSet(resolution, std::move(cells));
}

std::size_t intersection_size(const SurfaceVoxelSet& a, const SurfaceVoxelSet& b) {
  require(a.resolution() == b.resolution(), "surface IoU: resolution mismatch");
  std::size_t count = 0;
  auto ia = a.cells().begin();
  auto ib = b.cells().begin();
  while (ia != a.cells().end() && ib != b.cells().end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

double surface_iou(const SurfaceVoxelSet& a, const SurfaceVoxelSet& b) {
  const std::size_t inter = intersection_size(a, b);
  const std::size_t uni = a.size() + b.size() - inter;
  if (uni == 0) return 0.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace covision
