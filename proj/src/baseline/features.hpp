#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "baseline/gray_image.hpp"

namespace covision {

using Descriptor = std::array<std::uint64_t, 4>;  // 256 comparison bits

struct Keypoint {
  int u = 0;
  int v = 0;
  double response = 0.0;
  Descriptor descriptor{};
  bool operator==(const Keypoint&) const = default;
};

struct DetectorConfig {
  double threshold = 0.06;  // intensity difference for the circle test
  int min_arc = 9;          // contiguous circle pixels for the corner test
  int nms_radius = 2;
};

/// Circle-test corners with non-maximum suppression, strongest max_kp first,
/// each with a binary comparison descriptor.
std::vector<Keypoint> detect(const GrayImage& image, int max_kp, const DetectorConfig& cfg = {});

int hamming(const Descriptor& a, const Descriptor& b);

}  // namespace covision
