#pragma once

#include <array>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <random>
#include <string>
#include <sys/wait.h>

#include "geometry/box_scene.hpp"
#include "geometry/camera.hpp"

namespace fixture {

// Room surfaces sit a quarter cell off the 0.05 m voxel grid.
inline constexpr double kOffset = 0.0125;

inline covision::BoxScene empty_room() {
  covision::BoxScene s;
  s.id = "room";
  s.room.min = {-5.0 + kOffset, kOffset, -4.0 + kOffset};
  s.room.max = {5.0 + kOffset, 3.0 + kOffset, 4.0 + kOffset};
  s.floor_y = kOffset;
  return s;
}

inline covision::Intrinsics intrinsics(int w = 256, int h = 192, double f = 192.0) {
  return {w, h, f, f, w / 2.0, h / 2.0};
}

inline covision::CameraView view(int id, double x, double z, double yaw, covision::Intrinsics k = intrinsics(),
                                 double y = 1.5) {
  return {id, k, covision::Pose::level({x, y, z}, yaw)};
}

inline std::filesystem::path data_dir() { return COVISION_TEST_DATA; }
inline std::filesystem::path cli_path() { return COVISION_CLI; }

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("covision_" + tag + "_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

struct CommandResult {
  int exit_code = -1;
  std::string out;  // stdout only
};

inline CommandResult run(const std::string& command) {
  CommandResult r;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

inline std::string quote(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

}  // namespace fixture
