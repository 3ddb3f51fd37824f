#include "baseline/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace covision {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double block_value(int face, std::int64_t a, std::int64_t b) {
  std::uint64_t h = splitmix64(static_cast<std::uint64_t>(face));
  h = splitmix64(h ^ static_cast<std::uint64_t>(a));
  h = splitmix64(h ^ static_cast<std::uint64_t>(b));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace

GrayImage render_shaded(const BoxScene& scene, const CameraView& cam, const ShadingConfig& shading) {
  cam.intrinsics.validate();
  check_camera_placement(scene, cam);
  const auto& k = cam.intrinsics;
  const Eigen::Matrix3d rotation = cam.pose.orientation.toRotationMatrix();
  GrayImage image(k.width, k.height);
  for (int v = 0; v < k.height; ++v) {
    for (int u = 0; u < k.width; ++u) {
      const auto hit = cast_ray(scene, cam.pose.position, rotation * pixel_ray(k, u, v));
      if (!hit) continue;
      const double lambert = std::max(0.0, hit->normal.dot(shading.light_direction));
      double value = shading.ambient + shading.diffuse * lambert;
      if (shading.texture_amplitude != 0.0) {
        // In-plane coordinates: the two axes orthogonal to the face normal.
        const int axis = hit->face % 6 / 2;
        const int a0 = (axis + 1) % 3;
        const int a1 = (axis + 2) % 3;
        const auto ia = static_cast<std::int64_t>(std::floor(hit->point[a0] / shading.texture_cell));
        const auto ib = static_cast<std::int64_t>(std::floor(hit->point[a1] / shading.texture_cell));
        const double h = block_value(hit->face, ia, ib);
        value *= 1.0 + shading.texture_amplitude * (h - 0.5);
      }
      value = std::clamp(value, 0.0, 1.0);
      image.at(u, v) = std::round(value * 255.0) / 255.0;
    }
  }
  return image;
}

}  // namespace covision
