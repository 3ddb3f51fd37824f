#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "baseline/gray_image.hpp"
#include "covis/overlap.hpp"
#include "geometry/camera.hpp"
#include "graph/covis_graph.hpp"

namespace covision {

struct Scenario {
  std::string scene_id;
  std::uint64_t seed = 0;
  double resolution = kDefaultResolution;
  std::optional<double> coverage;  // set for generated scenarios
  std::vector<CameraView> views;
  std::vector<DepthImage> depths;
  std::vector<GrayImage> images;  // empty, or one per view
  CovisGraph gt;                  // weights, binarized adjacency and tau
  std::map<std::pair<int, int>, CovisMask> masks;

  std::size_t view_index(int id) const { return gt.index_of(id); }

  /// Re-checks every type invariant; throws invalid-input on violation.
  void validate() const;
  bool operator==(const Scenario&) const = default;
};

}  // namespace covision
