#include "geometry/box_scene.hpp"

#include <limits>
#include <sstream>

#include "common/error.hpp"

namespace covision {

void BoxScene::validate() const {
  require((room.min.array() < room.max.array()).all(), "scene '" + id + "': room min must be below max");
  require(floor_y >= room.min.y() && floor_y < room.max.y(), "scene '" + id + "': floor_y outside room");
  for (std::size_t k = 0; k < obstacles.size(); ++k) {
    const auto& o = obstacles[k];
    require((o.min.array() < o.max.array()).all(),
            "scene '" + id + "': obstacle " + std::to_string(k) + " min must be below max");
    require((o.min.array() > room.min.array()).all() && (o.max.array() < room.max.array()).all(),
            "scene '" + id + "': obstacle " + std::to_string(k) + " must lie strictly inside the room");
  }
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Entry distance into a box from outside, slab method. Returns the axis that
// was entered through, or -1 on a miss.
int slab_entry(const Aabb& box, const Eigen::Vector3d& o, const Eigen::Vector3d& d, double& t_enter) {
  double t_near = -kInf;
  double t_far = kInf;
  int axis_near = -1;
  for (int a = 0; a < 3; ++a) {
    if (d[a] == 0.0) {
      if (o[a] < box.min[a] || o[a] > box.max[a]) return -1;
      continue;
    }
    double t0 = (box.min[a] - o[a]) / d[a];
    double t1 = (box.max[a] - o[a]) / d[a];
    if (t0 > t1) std::swap(t0, t1);
    if (t0 > t_near) {
      t_near = t0;
      axis_near = a;
    }
    t_far = std::min(t_far, t1);
  }
  if (axis_near < 0 || t_near > t_far || t_near <= 0.0) return -1;
  t_enter = t_near;
  return axis_near;
}

}  // namespace

std::optional<RayHit> cast_ray(const BoxScene& scene, const Eigen::Vector3d& origin,
                               const Eigen::Vector3d& direction) {
  RayHit hit;
  hit.t = kInf;
  for (int a = 0; a < 3; ++a) {
    if (direction[a] == 0.0) continue;
    const bool towards_max = direction[a] > 0.0;
    const double t = ((towards_max ? scene.room.max[a] : scene.room.min[a]) - origin[a]) / direction[a];
    if (t < hit.t) {
      hit.t = t;
      hit.face = 2 * a + (towards_max ? 1 : 0);
      hit.normal = Eigen::Vector3d::Zero();
      hit.normal[a] = towards_max ? -1.0 : 1.0;
    }
  }
  for (std::size_t k = 0; k < scene.obstacles.size(); ++k) {
    double t = 0.0;
    const int a = slab_entry(scene.obstacles[k], origin, direction, t);
    if (a >= 0 && t < hit.t) {
      const bool entered_min = direction[a] > 0.0;
      hit.t = t;
      hit.face = 6 + 6 * static_cast<int>(k) + 2 * a + (entered_min ? 0 : 1);
      hit.normal = Eigen::Vector3d::Zero();
      hit.normal[a] = entered_min ? -1.0 : 1.0;
    }
  }
  if (hit.face < 0 || !(hit.t > 0.0) || hit.t == kInf) return std::nullopt;
  hit.point = origin + hit.t * direction;
  return hit;
}

void check_camera_placement(const BoxScene& scene, const CameraView& cam) {
  const Eigen::Vector3d& p = cam.pose.position;
  auto describe = [&] {
    std::ostringstream os;
    os << "camera " << cam.id << " at (" << p.x() << ", " << p.y() << ", " << p.z() << ")";
    return os.str();
  };
  if (!scene.room.contains_open(p)) fail(ErrorKind::InvalidPose, describe() + " is outside the room");
  for (const auto& o : scene.obstacles) {
    if (o.contains_closed(p)) fail(ErrorKind::InvalidPose, describe() + " is inside an obstacle");
  }
}

DepthImage render_depth_box(const BoxScene& scene, const CameraView& cam) {
  cam.intrinsics.validate();
  check_camera_placement(scene, cam);
  const auto& k = cam.intrinsics;
  const Eigen::Matrix3d rotation = cam.pose.orientation.toRotationMatrix();
  DepthImage depth(k.width, k.height);
  for (int v = 0; v < k.height; ++v) {
    for (int u = 0; u < k.width; ++u) {
      // The camera-frame ray has z = 1, so the hit distance is the z-depth.
      const Eigen::Vector3d dir = rotation * pixel_ray(k, u, v);
      if (auto hit = cast_ray(scene, cam.pose.position, dir)) {
        depth.at(u, v) = static_cast<float>(hit->t);
      }
    }
  }
  return depth;
}

}  // namespace covision
