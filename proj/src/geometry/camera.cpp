#include "geometry/camera.hpp"

#include <cmath>
#include <string>

#include "common/error.hpp"

namespace covision {

void Intrinsics::validate() const {
  require(width >= 1 && height >= 1, "intrinsics: width and height must be >= 1");
  require(std::isfinite(fx) && std::isfinite(fy) && fx > 0 && fy > 0,
          "intrinsics: focal lengths must be positive");
  require(cx >= 0 && cx < width && cy >= 0 && cy < height,
          "intrinsics: principal point must lie inside the image");
}

Pose Pose::level(const Eigen::Vector3d& position, double yaw) {
  // Camera +Y (down) maps to world -Y; rotating 180 degrees about Z keeps the
  // frame right-handed before the yaw about world +Y.
  const Eigen::Quaterniond base(Eigen::AngleAxisd(M_PI, Eigen::Vector3d::UnitZ()));
  const Eigen::Quaterniond turn(Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitY()));
  Pose pose;
  pose.position = position;
  pose.orientation = (turn * base).normalized();
  return pose;
}

void Pose::validate() const {
  require(position.allFinite(), "pose: position must be finite");
  require(std::abs(orientation.norm() - 1.0) <= 1e-9, "pose: quaternion must have unit norm");
}

void DepthImage::validate() const {
  require(width >= 1 && height >= 1, "depth: width and height must be >= 1");
  require(values.size() == static_cast<std::size_t>(width) * height,
          "depth: value count does not match dimensions");
  for (float d : values) {
    require(std::isfinite(d) && d >= 0.0f, "depth: values must be finite and non-negative");
  }
}

std::vector<Eigen::Vector3d> backproject(const DepthImage& depth, const CameraView& cam) {
  if (depth.width != cam.intrinsics.width || depth.height != cam.intrinsics.height) {
    fail(ErrorKind::InvalidInput,
         "backproject: depth is " + std::to_string(depth.width) + "x" + std::to_string(depth.height) +
             " but camera " + std::to_string(cam.id) + " is " + std::to_string(cam.intrinsics.width) + "x" +
             std::to_string(cam.intrinsics.height));
  }
  std::vector<Eigen::Vector3d> points;
  points.reserve(depth.values.size());
  for (int v = 0; v < depth.height; ++v) {
    for (int u = 0; u < depth.width; ++u) {
      const float d = depth.at(u, v);
      if (d > 0.0f) points.push_back(backproject_pixel(cam, u, v, d));
    }
  }
  return points;
}

std::optional<PixelProjection> project(const Eigen::Vector3d& world_point, const CameraView& cam) {
  const Eigen::Vector3d p = cam.pose.to_camera(world_point);
  if (!(p.z() > 0.0)) return std::nullopt;
  const auto& k = cam.intrinsics;
  const double u = k.fx * p.x() / p.z() + k.cx;
  const double v = k.fy * p.y() / p.z() + k.cy;
  if (u < -0.5 || u >= k.width - 0.5 || v < -0.5 || v >= k.height - 0.5) return std::nullopt;
  return PixelProjection{u, v, p.z()};
}

}  // namespace covision
