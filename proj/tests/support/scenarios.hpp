#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "baseline/render.hpp"
#include "covis/overlap.hpp"
#include "fixtures.hpp"
#include "scenegen/scenario.hpp"

namespace fixture {

// Ground truth over hand-placed views in the empty room.
inline covision::Scenario scenario_from_views(std::vector<covision::CameraView> views, bool images = true) {
  const auto scene = empty_room();
  covision::Scenario s;
  s.scene_id = "small";
  s.seed = 42;
  s.coverage = 0.4321;
  s.views = std::move(views);
  std::vector<covision::SurfaceVoxelSet> cells;
  for (const auto& v : s.views) {
    s.depths.push_back(covision::render_depth_box(scene, v));
    cells.push_back(covision::view_cells(v, s.depths.back(), s.resolution));
    if (images) s.images.push_back(covision::render_shaded(scene, v));
  }
  auto gt = covision::compute_ground_truth(s.views, cells, s.depths, 0.0, 2);
  s.gt = std::move(gt.graph);
  s.masks = std::move(gt.masks);
  return s;
}

// Four views, ids 0 3 7 9; view 9 faces away from view 0.
inline covision::Scenario small_scenario(bool images = true) {
  return scenario_from_views({view(0, 0, 0, 0.0), view(3, 1.0, 0.0, 0.2), view(7, -1.0, 0.5, -0.3), view(9, 0, 0, M_PI)},
                             images);
}

// Six views, ids 0..5, with a mix of connected and disconnected pairs.
inline covision::Scenario six_view_scenario(bool images = true) {
  return scenario_from_views({view(0, 0, 0, 0.0), view(1, 1.0, 0.0, 0.2), view(2, -1.0, 0.5, -0.3),
                              view(3, 0, 0, M_PI), view(4, 2.0, -1.0, M_PI / 2), view(5, -3.0, -2.0, -2.5)},
                             images);
}

}  // namespace fixture
