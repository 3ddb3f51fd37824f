#pragma once

#include <filesystem>
#include <string>

#include "geometry/box_scene.hpp"
#include "scenegen/scenario.hpp"

namespace covision {

inline constexpr int kManifestVersion = 1;
inline constexpr const char* kManifestFormat = "covision-scenario";
inline constexpr const char* kManifestName = "manifest.json";

// Directory layout:
//   manifest.json            sorted-key JSON, see write_manifest
//   graph.json               ground-truth graph file
//   poses.txt                import-compatible pose list
//   depth/view_NNNN.cvdz     one depth file per view
//   images/view_NNNN.pgm     optional rendered images
//   masks/SSSS_OOOO.rle      one mask per ordered pair with positive degree
std::filesystem::path save_scenario(const Scenario& scenario, const std::filesystem::path& dir);

/// Missing files, bad magic, unknown versions and invariant violations raise
/// missing-file, format, version and invalid-input errors respectively.
Scenario load_scenario(const std::filesystem::path& dir);

/// One line per view: "id width height fx fy cx cy px py pz qw qx qy qz".
std::string encode_poses(const Scenario& scenario);

/// Builds a scenario from a pose list and a directory of .cvdz depth files
/// (matched to poses in lexicographic file order), computing ground truth the
/// same way as for generated scenes.
Scenario import_external(const std::filesystem::path& poses_file, const std::filesystem::path& depth_dir,
                         double resolution, double tau = 0.0, int jobs = 1);

// Scene file: {"id", "floor_y", "room": {"min", "max"}, "obstacles": [{"min", "max"}]}.
BoxScene read_scene(const std::filesystem::path& path);
void write_scene(const std::filesystem::path& path, const BoxScene& scene);

}  // namespace covision
