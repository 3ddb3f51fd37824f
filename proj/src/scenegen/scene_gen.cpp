#include "scenegen/scene_gen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "baseline/render.hpp"
#include "common/parallel.hpp"
#include "covis/overlap.hpp"

namespace covision {

void GenConfig::validate() const {
  require(std::isfinite(alpha) && std::isfinite(beta) && alpha >= 0 && beta >= 0,
          "config: alpha and beta must be non-negative");
  require(n_candidates >= 1, "config: n_c must be >= 1");
  require(prune_radius > 0, "config: prune radius must be positive");
  require(iou_min >= 0 && iou_min < iou_max && iou_max <= 1, "config: need 0 <= iou_min < iou_max <= 1");
  require(coverage_stop >= 0 && coverage_stop <= 1, "config: coverage_stop must lie in [0, 1]");
  require(wall_band > 0, "config: wall band must be positive");
  require(eye_height > 0, "config: eye height must be positive");
  require(coverage_cell > 0 && region_spacing > 0, "config: grid sizes must be positive");
  require(yaw_jitter_deg >= 0 && yaw_jitter_deg <= 180, "config: yaw jitter must lie in [0, 180] degrees");
  require(resolution > 0, "config: voxel resolution must be positive");
  require(tau >= 0 && tau <= 1, "config: tau must lie in [0, 1]");
  require(max_iterations >= 1, "config: iteration cap must be >= 1");
  intrinsics.validate();
}

// ---------------------------------------------------------------------------
// Coverage

CoverageMap::CoverageMap(const BoxScene& scene, double cell_size)
    : cell_size_(cell_size), origin_x_(scene.room.min.x()), origin_z_(scene.room.min.z()) {
  require(cell_size > 0, "coverage: cell size must be positive");
  nx_ = std::max(1, static_cast<int>(std::ceil((scene.room.max.x() - origin_x_) / cell_size - 1e-9)));
  nz_ = std::max(1, static_cast<int>(std::ceil((scene.room.max.z() - origin_z_) / cell_size - 1e-9)));
  state_.assign(static_cast<std::size_t>(nx_) * nz_, 0);
  for (int iz = 0; iz < nz_; ++iz) {
    for (int ix = 0; ix < nx_; ++ix) {
      const double x = origin_x_ + (ix + 0.5) * cell_size;
      const double z = origin_z_ + (iz + 0.5) * cell_size;
      bool free = x < scene.room.max.x() && z < scene.room.max.z();
      for (const auto& o : scene.obstacles) {
        if (x >= o.min.x() && x <= o.max.x() && z >= o.min.z() && z <= o.max.z()) free = false;
      }
      state_[static_cast<std::size_t>(iz) * nx_ + ix] = free ? 0 : -1;
      total_ += free ? 1 : 0;
    }
  }
}

int CoverageMap::cell_index(double x, double z) const {
  const int ix = std::clamp(static_cast<int>(std::floor((x - origin_x_) / cell_size_)), 0, nx_ - 1);
  const int iz = std::clamp(static_cast<int>(std::floor((z - origin_z_) / cell_size_)), 0, nz_ - 1);
  const int cell = iz * nx_ + ix;
  return in_footprint(cell) ? cell : -1;
}

std::vector<int> CoverageMap::floor_cells(std::span<const Eigen::Vector3d> points) const {
  std::vector<int> cells;
  cells.reserve(points.size() / 16);
  for (const auto& p : points) {
    const int c = cell_index(p.x(), p.z());
    if (c >= 0) cells.push_back(c);
  }
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return cells;
}

void CoverageMap::mark(std::span<const int> cells) {
  for (int c : cells) {
    if (!in_footprint(c)) continue;
    auto& s = state_[static_cast<std::size_t>(c)];
    if (s == 0) {
      s = 1;
      ++covered_;
    }
  }
}

double coverage_fraction(const CoverageMap& coverage) {
  require(coverage.total_cells() > 0, "coverage: footprint has no cells");
  return static_cast<double>(coverage.covered_cells()) / static_cast<double>(coverage.total_cells());
}

// ---------------------------------------------------------------------------
// Placement region

FaceProximity nearest_face(const BoxScene& scene, const Eigen::Vector2d& p) {
  const double min_x = scene.room.min.x(), max_x = scene.room.max.x();
  const double min_z = scene.room.min.z(), max_z = scene.room.max.z();
  FaceProximity best{p.x() - min_x, {1.0, 0.0}};
  auto consider = [&](double d, Eigen::Vector2d n) {
    if (d < best.distance) best = {d, n};
  };
  consider(max_x - p.x(), {-1.0, 0.0});
  consider(p.y() - min_z, {0.0, 1.0});
  consider(max_z - p.y(), {0.0, -1.0});
  for (const auto& o : scene.obstacles) {
    const Eigen::Vector2d lo(o.min.x(), o.min.z());
    const Eigen::Vector2d hi(o.max.x(), o.max.z());
    const Eigen::Vector2d closest = p.cwiseMax(lo).cwiseMin(hi);
    const Eigen::Vector2d away = p - closest;
    const double d = away.norm();
    if (d > 0.0) consider(d, away / d);
  }
  return best;
}

CandidateRegion band_region(const BoxScene& scene, double wall_band, double spacing) {
  require(wall_band > 0, "placement band: width must be positive");
  require(spacing > 0, "placement band: spacing must be positive");
  CandidateRegion region;
  const double min_x = scene.room.min.x(), max_x = scene.room.max.x();
  const double min_z = scene.room.min.z(), max_z = scene.room.max.z();
  const int nx = static_cast<int>(std::floor((max_x - min_x) / spacing));
  const int nz = static_cast<int>(std::floor((max_z - min_z) / spacing));
  for (int iz = 0; iz < nz; ++iz) {
    for (int ix = 0; ix < nx; ++ix) {
      const Eigen::Vector2d p(min_x + (ix + 0.5) * spacing, min_z + (iz + 0.5) * spacing);
      bool inside_obstacle = false;
      for (const auto& o : scene.obstacles) {
        if (p.x() >= o.min.x() && p.x() <= o.max.x() && p.y() >= o.min.z() && p.y() <= o.max.z())
          inside_obstacle = true;
      }
      if (inside_obstacle) continue;
      if (nearest_face(scene, p).distance <= wall_band) region.positions.push_back(p);
    }
  }
  return region;
}

CandidateRegion prune(CandidateRegion region, const Eigen::Vector2d& selected, double r) {
  require(r > 0, "prune: radius must be positive");
  std::erase_if(region.positions, [&](const Eigen::Vector2d& p) {
    return std::hypot(p.x() - selected.x(), p.y() - selected.y()) <= r;
  });
  return region;
}

// ---------------------------------------------------------------------------
// Candidates

std::vector<Pose> sample_poses(const BoxScene& scene, const CandidateRegion& region, int n, const GenConfig& cfg,
                               Rng& rng) {
  require(cfg.wall_band > 0, "sampling: wall band must be positive");
  if (region.empty()) fail(ErrorKind::ExhaustedRegion, "sampling: every placement position has been pruned");
  const double jitter = cfg.yaw_jitter_deg * M_PI / 180.0;
  std::vector<Pose> poses;
  poses.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const auto& p = region.positions[uniform_index(rng, region.size())];
    const auto face = nearest_face(scene, p);
    const double yaw = std::atan2(face.normal.x(), face.normal.y()) + uniform_real(rng, -jitter, jitter);
    poses.push_back(Pose::level({p.x(), scene.floor_y + cfg.eye_height, p.y()}, yaw));
  }
  return poses;
}

Candidate make_candidate(const BoxScene& scene, const Pose& pose, const CoverageMap& coverage,
                         const GenConfig& cfg) {
  Candidate c;
  c.pose = pose;
  const CameraView cam{0, cfg.intrinsics, pose};
  c.depth = render_depth_box(scene, cam);
  const auto points = backproject(c.depth, cam);
  c.cells = voxelize(points, cfg.resolution);
  c.floor_cells = coverage.floor_cells(points);
  return c;
}

std::vector<Candidate> sample_candidates(const BoxScene& scene, const CandidateRegion& region,
                                         const CoverageMap& coverage, int n, const GenConfig& cfg, Rng& rng) {
  const auto poses = sample_poses(scene, region, n, cfg, rng);
  std::vector<Candidate> out(poses.size());
  parallel_for(poses.size(), cfg.jobs,
               [&](std::size_t k) { out[k] = make_candidate(scene, poses[k], coverage, cfg); });
  return out;
}

double score(std::span<const int> floor_cells, const CoverageMap& coverage, double alpha, double beta) {
  std::size_t unexplored = 0;
  std::size_t explored = 0;
  for (int c : floor_cells) {
    if (coverage.covered(c)) {
      ++explored;
    } else {
      ++unexplored;
    }
  }
  return alpha * static_cast<double>(unexplored) + beta * static_cast<double>(explored);
}

double score(const Candidate& candidate, const CoverageMap& coverage, double alpha, double beta) {
  return score(candidate.floor_cells, coverage, alpha, beta);
}

bool admissible(const SurfaceVoxelSet& candidate, std::span<const SurfaceVoxelSet> selected, double iou_min,
                double iou_max) {
  if (selected.empty()) return true;
  bool connected = false;
  for (const auto& s : selected) {
    const double iou = surface_iou(candidate, s);
    if (iou > iou_max) return false;
    if (iou >= iou_min) connected = true;
  }
  return connected;
}

// ---------------------------------------------------------------------------
// Generation loop

namespace {

Scenario assemble(const BoxScene& scene, const GenConfig& cfg, std::vector<Candidate> chosen, double coverage) {
  Scenario s;
  s.scene_id = scene.id;
  s.seed = cfg.seed;
  s.resolution = cfg.resolution;
  s.coverage = coverage;
  std::vector<SurfaceVoxelSet> cells;
  for (std::size_t k = 0; k < chosen.size(); ++k) {
    s.views.push_back({static_cast<int>(k), cfg.intrinsics, chosen[k].pose});
    s.depths.push_back(std::move(chosen[k].depth));
    cells.push_back(std::move(chosen[k].cells));
  }
  auto gt = compute_ground_truth(s.views, cells, s.depths, cfg.tau, cfg.jobs);
  s.gt = std::move(gt.graph);
  s.masks = std::move(gt.masks);
  if (cfg.render_images) {
    s.images.resize(s.views.size());
    parallel_for(s.views.size(), cfg.jobs, [&](std::size_t k) { s.images[k] = render_shaded(scene, s.views[k]); });
  }
  return s;
}

}  // namespace

Scenario generate_scenario(const BoxScene& scene, const GenConfig& cfg) {
  scene.validate();
  cfg.validate();
  Rng rng(cfg.seed);
  CoverageMap coverage(scene, cfg.coverage_cell);
  coverage_fraction(coverage);
  CandidateRegion region = band_region(scene, cfg.wall_band, cfg.region_spacing);

  std::vector<Candidate> chosen;
  std::vector<SurfaceVoxelSet> chosen_cells;
  std::string stop_reason;
  bool done = false;
  for (int iteration = 0; iteration < cfg.max_iterations && !done; ++iteration) {
    if (region.empty()) {
      stop_reason = "placement region exhausted";
      break;
    }
    auto candidates = sample_candidates(scene, region, coverage, cfg.n_candidates, cfg, rng);
    std::vector<std::uint8_t> ok(candidates.size());
    parallel_for(candidates.size(), cfg.jobs, [&](std::size_t k) {
      ok[k] = admissible(candidates[k].cells, chosen_cells, cfg.iou_min, cfg.iou_max) ? 1 : 0;
    });
    std::size_t best = candidates.size();
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      if (!ok[k]) continue;
      const double s = score(candidates[k], coverage, cfg.alpha, cfg.beta);
      if (s > best_score) {
        best_score = s;
        best = k;
      }
    }
    if (best == candidates.size()) continue;

    Candidate& pick = candidates[best];
    coverage.mark(pick.floor_cells);
    region = prune(std::move(region), {pick.pose.position.x(), pick.pose.position.z()}, cfg.prune_radius);
    chosen_cells.push_back(pick.cells);
    chosen.push_back(std::move(pick));
    done = coverage_fraction(coverage) > cfg.coverage_stop;
  }

  const double reached = coverage_fraction(coverage);
  Scenario scenario = assemble(scene, cfg, std::move(chosen), reached);
  if (!done) {
    if (stop_reason.empty()) stop_reason = "iteration cap of " + std::to_string(cfg.max_iterations) + " reached";
    std::ostringstream os;
    os << "scene '" << scene.id << "': " << stop_reason << " at coverage " << reached << " with "
       << scenario.views.size() << " views (target > " << cfg.coverage_stop << ")";
    throw PartialScenarioError(os.str(), std::move(scenario));
  }
  return scenario;
}

}  // namespace covision
