#pragma once

#include <Eigen/Core>
#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace covision {

struct Cell {
  std::int32_t x = 0;
  std::int32_t y = 0;
  std::int32_t z = 0;
  auto operator<=>(const Cell&) const = default;
};

/// floor(coordinate / resolution) per axis.
Cell cell_of(const Eigen::Vector3d& point, double resolution);

// Quantized surface cells seen by a view. Cells are kept sorted and unique so
// set operations are linear merges.
class SurfaceVoxelSet {
 public:
  SurfaceVoxelSet() = default;
  explicit SurfaceVoxelSet(double resolution) : resolution_(resolution) {}
  SurfaceVoxelSet(double resolution, std::vector<Cell> cells);

  double resolution() const { return resolution_; }
  const std::vector<Cell>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }
  bool contains(const Cell& c) const;

  bool operator==(const SurfaceVoxelSet&) const = default;

 private:
  double resolution_ = 0.0;
  std::vector<Cell> cells_;
};

SurfaceVoxelSet voxelize(std::span<const Eigen::Vector3d> points, double resolution);

std::size_t intersection_size(const SurfaceVoxelSet& a, const SurfaceVoxelSet& b);

/// |a ∩ b| / |a ∪ b|, 0 when both are empty.
double surface_iou(const SurfaceVoxelSet& a, const SurfaceVoxelSet& b);

}  // namespace covision
