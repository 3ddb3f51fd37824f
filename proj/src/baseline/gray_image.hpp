#pragma once

#include <cstddef>
#include <vector>

namespace covision {

// Row-major intensities in [0, 1].
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  GrayImage() = default;
  GrayImage(int w, int h, double fill = 0.0)
      : width(w), height(h), values(static_cast<std::size_t>(w) * h, fill) {}

  double at(int u, int v) const { return values[static_cast<std::size_t>(v) * width + u]; }
  double& at(int u, int v) { return values[static_cast<std::size_t>(v) * width + u]; }

  bool operator==(const GrayImage&) const = default;
};

}  // namespace covision
