#include "scenegen/scenario.hpp"

#include "common/error.hpp"

namespace covision {

void Scenario::validate() const {
  require(resolution > 0.0, "scenario: resolution must be positive");
  require(depths.size() == views.size(), "scenario: one depth image per view is required");
  require(images.empty() || images.size() == views.size(), "scenario: images must be absent or one per view");
  require(gt.ids.size() == views.size(), "scenario: graph nodes do not match views");
  require(gt.adjacency.has_value() && gt.tau.has_value(), "scenario: ground-truth graph must be binarized");
  gt.validate();
  for (std::size_t i = 0; i < views.size(); ++i) {
    const auto& v = views[i];
    require(gt.ids[i] == v.id, "scenario: graph node order does not match views");
    v.intrinsics.validate();
    v.pose.validate();
    depths[i].validate();
    require(depths[i].width == v.intrinsics.width && depths[i].height == v.intrinsics.height,
            "scenario: depth of view " + std::to_string(v.id) + " does not match its intrinsics");
    if (!images.empty()) {
      require(images[i].width == v.intrinsics.width && images[i].height == v.intrinsics.height,
              "scenario: image of view " + std::to_string(v.id) + " does not match its intrinsics");
    }
  }
  for (const auto& [key, mask] : masks) {
    const auto s = gt.index_of(key.first);
    const auto o = gt.index_of(key.second);
    require(mask.source_view == key.first && mask.other_view == key.second, "scenario: mask key mismatch");
    require(gt.weights.at(s, o) > 0.0, "scenario: mask stored for a pair with zero degree");
    require(mask.width == views[s].intrinsics.width && mask.height == views[s].intrinsics.height &&
                mask.bits.size() == static_cast<std::size_t>(mask.width) * mask.height,
            "scenario: mask dimensions do not match the source view");
  }
}

}  // namespace covision
