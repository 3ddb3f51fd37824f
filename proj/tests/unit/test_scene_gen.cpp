#include <cmath>
#include <numeric>
#include <queue>

#include "common/error.hpp"
#include "covis/voxel.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "scenegen/scene_gen.hpp"
#include "store/scenario_store.hpp"

using namespace covision;

namespace {

BoxScene grid_room(double w, double d) {
  BoxScene s;
  s.id = "grid";
  s.room.min = {0, 0, 0};
  s.room.max = {w, 3, d};
  return s;
}

double angle_between(double a, double b) {
  double d = std::fmod(std::abs(a - b), 2 * M_PI);
  return d > M_PI ? 2 * M_PI - d : d;
}

double yaw_of(const Pose& p) {
  const Eigen::Vector3d f = p.orientation * Eigen::Vector3d::UnitZ();
  return std::atan2(f.x(), f.z());
}

// Direct distance to the nearest room wall or obstacle footprint edge.
double wall_distance(const BoxScene& s, double x, double z) {
  double d = std::min({x - s.room.min.x(), s.room.max.x() - x, z - s.room.min.z(), s.room.max.z() - z});
  for (const auto& o : s.obstacles) {
    const double dx = std::max({o.min.x() - x, 0.0, x - o.max.x()});
    const double dz = std::max({o.min.z() - z, 0.0, z - o.max.z()});
    d = std::min(d, std::hypot(dx, dz));
  }
  return d;
}

GenConfig quick_config(std::uint64_t seed) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.render_images = false;
  return cfg;
}

}  // namespace

TEST_CASE("score substitutes raw counts") {
  const auto scene = grid_room(15, 10);
  CoverageMap cov(scene, 1.0);
  REQUIRE(cov.total_cells() == 150);
  std::vector<int> all(150);
  std::iota(all.begin(), all.end(), 0);
  cov.mark(std::span<const int>(all.data(), 50));
  CHECK(score(all, cov, 0.9, 0.1) == doctest::Approx(95.0).epsilon(1e-15));
  CHECK(score(std::vector<int>{}, cov, 0.9, 0.1) == 0.0);
  const std::vector<int> novel(all.begin() + 100, all.begin() + 120);
  const std::vector<int> redundant(all.begin(), all.begin() + 20);
  CHECK(score(novel, cov, 0.9, 0.1) == doctest::Approx(9.0 * score(redundant, cov, 0.9, 0.1)));
}

TEST_CASE("coverage fraction") {
  const auto scene = grid_room(10, 5);
  CoverageMap cov(scene, 1.0);
  REQUIRE(cov.total_cells() == 50);
  CHECK(coverage_fraction(cov) == 0.0);
  std::vector<int> cells(41);
  std::iota(cells.begin(), cells.end(), 0);
  cov.mark(cells);
  CHECK(coverage_fraction(cov) == doctest::Approx(0.82));
  cov.mark(cells);  // idempotent
  CHECK(cov.covered_cells() == 41);
  std::vector<int> rest(50);
  std::iota(rest.begin(), rest.end(), 0);
  cov.mark(rest);
  CHECK(coverage_fraction(cov) == 1.0);
}

TEST_CASE("coverage excludes obstacle footprints") {
  auto scene = grid_room(10, 5);
  scene.obstacles.push_back({{2.0, 0.1, 1.0}, {4.0, 1.0, 3.0}});
  CoverageMap cov(scene, 1.0);
  CHECK(cov.total_cells() == 46);
  CHECK(cov.cell_index(2.5, 1.5) == -1);
  CHECK(cov.cell_index(10.0, 5.0) >= 0);  // boundary clamps inward
}

TEST_CASE("prune uses an inclusive radius") {
  CandidateRegion region;
  region.positions = {{0.5, 0.0}, {1.0, 0.0}, {1.001, 0.0}, {0.0, -1.0}, {0.6, 0.8}, {2.0, 2.0}};
  const auto kept = prune(region, {0.0, 0.0}, 1.0);
  REQUIRE(kept.size() == 2);
  CHECK(kept.positions[0] == Eigen::Vector2d(1.001, 0.0));
  CHECK(kept.positions[1] == Eigen::Vector2d(2.0, 2.0));
  CHECK_THROWS_AS(prune(region, {0, 0}, 0.0), Error);
}

TEST_CASE("prune on a dense grid matches direct distance") {
  CandidateRegion region;
  for (int i = 0; i < 100; ++i)
    for (int j = 0; j < 100; ++j) region.positions.emplace_back(-2.5 + 0.05 * i, -2.5 + 0.05 * j);
  const Eigen::Vector2d s(0.013, -0.021);
  const double r = 1.0;
  const auto kept = prune(region, s, r);
  std::size_t expect = 0;
  for (const auto& p : region.positions) expect += std::hypot(p.x() - s.x(), p.y() - s.y()) > r ? 1 : 0;
  CHECK(kept.size() == expect);
  for (const auto& p : kept.positions) CHECK(std::hypot(p.x() - s.x(), p.y() - s.y()) > r);
}

TEST_CASE("sampled poses lie in the band and face away from the nearest face") {
  BoxScene scene = fixture::empty_room();
  scene.obstacles.push_back({{-1.0, 0.0135, -1.0}, {1.0, 0.8, 0.5}});
  GenConfig cfg;
  const auto region = band_region(scene, cfg.wall_band, cfg.region_spacing);
  REQUIRE_FALSE(region.empty());
  Rng rng(17);
  const auto poses = sample_poses(scene, region, 1000, cfg, rng);
  REQUIRE(poses.size() == 1000);
  for (const auto& p : poses) {
    const double x = p.position.x(), z = p.position.z();
    CHECK(wall_distance(scene, x, z) <= cfg.wall_band + 1e-12);
    CHECK(p.position.y() == doctest::Approx(scene.floor_y + cfg.eye_height));
    const auto face = nearest_face(scene, {x, z});
    const double normal_yaw = std::atan2(face.normal.x(), face.normal.y());
    CHECK(angle_between(yaw_of(p), normal_yaw) <= M_PI / 4 + 1e-9);
    const Eigen::Vector3d f = p.orientation * Eigen::Vector3d::UnitZ();
    CHECK(std::abs(f.y()) < 1e-12);  // level
  }
}

TEST_CASE("empty region raises exhausted-region") {
  Rng rng(1);
  try {
    sample_poses(fixture::empty_room(), CandidateRegion{}, 1, GenConfig{}, rng);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ExhaustedRegion);
  }
}

TEST_CASE("admissibility window") {
  const SurfaceVoxelSet base(1.0, {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0}});
  const std::vector<SurfaceVoxelSet> selected = {base};
  CHECK(admissible(base, {}, 0.05, 0.30));
  // IoU 3/5 = 0.6 > 0.30
  CHECK_FALSE(admissible(SurfaceVoxelSet(1.0, {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {4, 0, 0}}), selected, 0.05, 0.30));
  // IoU 0
  CHECK_FALSE(admissible(SurfaceVoxelSet(1.0, {{9, 0, 0}}), selected, 0.05, 0.30));
  // IoU 1/7
  CHECK(admissible(SurfaceVoxelSet(1.0, {{3, 0, 0}, {4, 0, 0}, {5, 0, 0}, {6, 0, 0}}), selected, 0.05, 0.30));
  // fine against one, too close to another
  const std::vector<SurfaceVoxelSet> two = {base, SurfaceVoxelSet(1.0, {{3, 0, 0}, {4, 0, 0}})};
  CHECK_FALSE(admissible(SurfaceVoxelSet(1.0, {{3, 0, 0}, {4, 0, 0}, {5, 0, 0}}), two, 0.05, 0.30));
}

TEST_CASE("config validation") {
  GenConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.iou_min = 0.4;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = GenConfig{};
  cfg.n_candidates = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = GenConfig{};
  cfg.prune_radius = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("generated scenarios satisfy the selection contract") {
  for (const char* name : {"room_empty.json", "room_two.json"}) {
    CAPTURE(name);
    const auto scene = read_scene(fixture::data_dir() / name);
    const auto cfg = quick_config(3);
    const auto s = generate_scenario(scene, cfg);
    CHECK_NOTHROW(s.validate());
    REQUIRE(s.coverage);
    CHECK(*s.coverage > cfg.coverage_stop);
    const std::size_t n = s.views.size();
    for (std::size_t i = 0; i < n; ++i) {
      const auto& pi = s.views[i].pose.position;
      for (std::size_t j = i + 1; j < n; ++j) {
        const auto& pj = s.views[j].pose.position;
        CHECK(std::hypot(pi.x() - pj.x(), pi.z() - pj.z()) > cfg.prune_radius);
        CHECK(s.gt.weights.at(i, j) <= cfg.iou_max);
      }
      if (i > 0) {
        double best = 0;
        for (std::size_t j = 0; j < i; ++j) best = std::max(best, s.gt.weights.at(i, j));
        CHECK(best >= cfg.iou_min);
      }
    }
    // degree >= iou_min edges connect every view
    std::vector<bool> seen(n, false);
    std::queue<std::size_t> q;
    q.push(0);
    seen[0] = true;
    while (!q.empty()) {
      const auto v = q.front();
      q.pop();
      for (std::size_t u = 0; u < n; ++u)
        if (!seen[u] && s.gt.weights.at(v, u) >= cfg.iou_min) {
          seen[u] = true;
          q.push(u);
        }
    }
    CHECK(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }));
    for (const auto& [key, mask] : s.masks) CHECK(s.gt.weights.at(s.view_index(key.first), s.view_index(key.second)) > 0);
  }
}

TEST_CASE("generation is deterministic and independent of worker count") {
  const auto scene = read_scene(fixture::data_dir() / "room_two.json");
  auto cfg = quick_config(5);
  cfg.render_images = true;
  const auto a = generate_scenario(scene, cfg);
  cfg.jobs = 3;
  const auto b = generate_scenario(scene, cfg);
  CHECK(a == b);
}

TEST_CASE("coverage_stop of zero selects one view") {
  auto cfg = quick_config(1);
  cfg.coverage_stop = 0.0;
  const auto s = generate_scenario(fixture::empty_room(), cfg);
  CHECK(s.views.size() == 1);
  CHECK(s.gt.adjacency->edge_count() == 0);
}

TEST_CASE("unreachable coverage yields a partial scenario") {
  auto cfg = quick_config(2);
  cfg.coverage_stop = 1.0;
  cfg.max_iterations = 3;
  try {
    generate_scenario(fixture::empty_room(), cfg);
    FAIL("expected a partial-scenario error");
  } catch (const PartialScenarioError& e) {
    CHECK(e.kind() == ErrorKind::PartialScenario);
    CHECK(e.partial().views.size() >= 1);
    CHECK(e.partial().views.size() <= 3);
    CHECK_NOTHROW(e.partial().validate());
  }
}
