#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "geometry/camera.hpp"

namespace covision {

struct Aabb {
  Eigen::Vector3d min = Eigen::Vector3d::Zero();
  Eigen::Vector3d max = Eigen::Vector3d::Zero();

  bool contains_closed(const Eigen::Vector3d& p) const {
    return (p.array() >= min.array()).all() && (p.array() <= max.array()).all();
  }
  bool contains_open(const Eigen::Vector3d& p) const {
    return (p.array() > min.array()).all() && (p.array() < max.array()).all();
  }
};

// Axis-aligned room with axis-aligned box furniture. World +Y is up.
struct BoxScene {
  std::string id;
  Aabb room;
  std::vector<Aabb> obstacles;
  double floor_y = 0.0;

  void validate() const;

  /// Total number of faces addressable by RayHit::face.
  int face_count() const { return 6 + 6 * static_cast<int>(obstacles.size()); }
};

// Faces are numbered 2*axis + side for the room (side 1 = max face) and
// 6 + 6*k + 2*axis + side for obstacle k.
struct RayHit {
  double t = 0.0;
  int face = -1;
  Eigen::Vector3d point = Eigen::Vector3d::Zero();
  Eigen::Vector3d normal = Eigen::Vector3d::Zero();  // facing the ray origin
};

/// Nearest surface along origin + t * direction for an origin inside the room.
std::optional<RayHit> cast_ray(const BoxScene& scene, const Eigen::Vector3d& origin,
                               const Eigen::Vector3d& direction);

/// Throws invalid-pose when the camera is not strictly inside the room or
/// lies inside (or on) an obstacle.
void check_camera_placement(const BoxScene& scene, const CameraView& cam);

/// Per-pixel z-depth of the nearest hit.
DepthImage render_depth_box(const BoxScene& scene, const CameraView& cam);

}  // namespace covision
