#pragma once

#include <Eigen/Core>

#include "baseline/gray_image.hpp"
#include "geometry/box_scene.hpp"

namespace covision {

struct ShadingConfig {
  Eigen::Vector3d light_direction = Eigen::Vector3d(0.35, 0.8, 0.45).normalized();
  double ambient = 0.35;
  double diffuse = 0.55;
  double texture_amplitude = 0.6;
  double texture_cell = 0.25;  // meters per procedural texture block
};

/// Lambertian shading times a blocky per-face procedural texture, quantized to
/// 8-bit levels. Pixels without a hit are 0.
GrayImage render_shaded(const BoxScene& scene, const CameraView& cam, const ShadingConfig& shading = {});

}  // namespace covision
