#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <optional>
#include <vector>

namespace covision {

// Camera frame: +Z forward, +X right, +Y down. Pixel (u, v) with depth d maps
// to ((u - cx) d / fx, (v - cy) d / fy, d); pixel centers sit on integers.
struct Intrinsics {
  int width = 0;
  int height = 0;
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;

  void validate() const;
  bool operator==(const Intrinsics&) const = default;
};

// World-from-camera rigid transform.
struct Pose {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Quaterniond orientation = Eigen::Quaterniond::Identity();

  static Pose identity() { return {}; }

  /// Level camera (pitch 0) in a +Y-up world looking along
  /// (sin yaw, 0, cos yaw).
  static Pose level(const Eigen::Vector3d& position, double yaw);

  Eigen::Vector3d to_world(const Eigen::Vector3d& camera_point) const {
    return orientation * camera_point + position;
  }
  Eigen::Vector3d to_camera(const Eigen::Vector3d& world_point) const {
    return orientation.conjugate() * (world_point - position);
  }

  void validate() const;

  bool operator==(const Pose& other) const {
    return position == other.position && orientation.coeffs() == other.orientation.coeffs();
  }
};

struct CameraView {
  int id = 0;
  Intrinsics intrinsics;
  Pose pose;

  bool operator==(const CameraView&) const = default;
};

// Row-major depth in meters; 0 marks an invalid pixel.
struct DepthImage {
  int width = 0;
  int height = 0;
  std::vector<float> values;

  DepthImage() = default;
  DepthImage(int w, int h) : width(w), height(h), values(static_cast<std::size_t>(w) * h, 0.0f) {}

  float at(int u, int v) const { return values[static_cast<std::size_t>(v) * width + u]; }
  float& at(int u, int v) { return values[static_cast<std::size_t>(v) * width + u]; }

  void validate() const;
  bool operator==(const DepthImage&) const = default;
};

struct PixelProjection {
  double u;
  double v;
  double depth;
};

/// Camera-frame ray direction through a (sub)pixel, scaled so z = 1.
inline Eigen::Vector3d pixel_ray(const Intrinsics& k, double u, double v) {
  return {(u - k.cx) / k.fx, (v - k.cy) / k.fy, 1.0};
}

/// World point seen by pixel (u, v) at z-depth d.
inline Eigen::Vector3d backproject_pixel(const CameraView& cam, int u, int v, double depth) {
  return cam.pose.to_world(pixel_ray(cam.intrinsics, u, v) * depth);
}

/// One world point per valid (depth > 0) pixel, in row-major pixel order.
std::vector<Eigen::Vector3d> backproject(const DepthImage& depth, const CameraView& cam);

/// Pixel and positive depth of a world point, or nothing when it is behind the
/// camera or outside the image rectangle [-0.5, w - 0.5) x [-0.5, h - 0.5).
std::optional<PixelProjection> project(const Eigen::Vector3d& world_point, const CameraView& cam);

}  // namespace covision
