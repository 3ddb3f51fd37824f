#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <vector>

#include "common/error.hpp"
#include "common/rng.hpp"
#include "covis/voxel.hpp"
#include "geometry/box_scene.hpp"
#include "scenegen/scenario.hpp"

namespace covision {

struct GenConfig {
  double alpha = 0.9;
  double beta = 0.1;
  int n_candidates = 32;
  double prune_radius = 1.0;
  double iou_min = 0.05;
  double iou_max = 0.30;
  double coverage_stop = 0.80;
  double wall_band = 0.5;
  double eye_height = 1.5;
  double coverage_cell = 0.25;
  double region_spacing = 0.05;
  double yaw_jitter_deg = 45.0;
  double resolution = kDefaultResolution;
  double tau = 0.0;
  int max_iterations = 500;
  std::uint64_t seed = 0;
  Intrinsics intrinsics{256, 192, 192.0, 192.0, 128.0, 96.0};
  bool render_images = true;
  int jobs = 1;

  void validate() const;
};

// Top-down grid over the room's (x, z) footprint. Cells whose centers fall in
// an obstacle footprint are not part of the map.
class CoverageMap {
 public:
  CoverageMap(const BoxScene& scene, double cell_size);

  double cell_size() const { return cell_size_; }
  std::size_t total_cells() const { return total_; }
  std::size_t covered_cells() const { return covered_; }
  std::size_t grid_cells() const { return state_.size(); }

  /// Footprint cell containing (x, z), or -1. Points on the room boundary are
  /// clamped into the outermost cells.
  int cell_index(double x, double z) const;
  bool in_footprint(int cell) const { return cell >= 0 && state_[static_cast<std::size_t>(cell)] >= 0; }
  bool covered(int cell) const { return in_footprint(cell) && state_[static_cast<std::size_t>(cell)] == 1; }

  /// Sorted unique footprint cells hit by the (x, z) projection of points.
  std::vector<int> floor_cells(std::span<const Eigen::Vector3d> points) const;
  void mark(std::span<const int> cells);

 private:
  double cell_size_;
  double origin_x_;
  double origin_z_;
  int nx_;
  int nz_;
  std::vector<std::int8_t> state_;  // -1 outside footprint, 0 open, 1 covered
  std::size_t total_ = 0;
  std::size_t covered_ = 0;
};

/// covered / total; throws invalid-input on an empty footprint.
double coverage_fraction(const CoverageMap& coverage);

// Positions (x, z) where a camera may still be placed.
struct CandidateRegion {
  std::vector<Eigen::Vector2d> positions;
  bool empty() const { return positions.empty(); }
  std::size_t size() const { return positions.size(); }
};

struct FaceProximity {
  double distance;
  Eigen::Vector2d normal;  // unit (x, z) direction away from the face
};

/// Closest wall or obstacle face to a free-space position on the floor plan.
FaceProximity nearest_face(const BoxScene& scene, const Eigen::Vector2d& position);

/// Grid positions in free space within wall_band of a wall or obstacle face.
CandidateRegion band_region(const BoxScene& scene, double wall_band, double spacing);

/// Removes every position with Euclidean distance <= r from `selected`.
CandidateRegion prune(CandidateRegion region, const Eigen::Vector2d& selected, double r);

struct Candidate {
  Pose pose;
  DepthImage depth;
  SurfaceVoxelSet cells;
  std::vector<int> floor_cells;
};

/// Poses drawn uniformly from the region, yawed along the nearest face normal
/// with uniform jitter. Throws exhausted-region when the region is empty.
std::vector<Pose> sample_poses(const BoxScene& scene, const CandidateRegion& region, int n, const GenConfig& cfg,
                               Rng& rng);

Candidate make_candidate(const BoxScene& scene, const Pose& pose, const CoverageMap& coverage,
                         const GenConfig& cfg);

std::vector<Candidate> sample_candidates(const BoxScene& scene, const CandidateRegion& region,
                                         const CoverageMap& coverage, int n, const GenConfig& cfg, Rng& rng);

/// alpha * (uncovered cells) + beta * (already covered cells), as raw counts.
double score(const Candidate& candidate, const CoverageMap& coverage, double alpha, double beta);
double score(std::span<const int> floor_cells, const CoverageMap& coverage, double alpha, double beta);

/// True with no selection; otherwise every IoU <= iou_max and some IoU >= iou_min.
bool admissible(const SurfaceVoxelSet& candidate, std::span<const SurfaceVoxelSet> selected, double iou_min,
                double iou_max);

class PartialScenarioError : public Error {
 public:
  PartialScenarioError(const std::string& message, Scenario partial)
      : Error(ErrorKind::PartialScenario, message), partial_(std::move(partial)) {}
  const Scenario& partial() const { return partial_; }

 private:
  Scenario partial_;
};

/// Greedy coverage-driven view selection. Throws PartialScenarioError when the
/// iteration cap is hit or the placement region runs out before coverage_stop.
Scenario generate_scenario(const BoxScene& scene, const GenConfig& cfg);

}  // namespace covision
