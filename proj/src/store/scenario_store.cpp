#include "store/scenario_store.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "common/error.hpp"
#include "covis/overlap.hpp"
#include "json.hpp"
#include "store/binary_io.hpp"
#include "store/graph_file.hpp"

namespace covision {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string padded(int value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d", value);
  return buf;
}

json vec_json(const Eigen::Vector3d& v) { return json::array({v.x(), v.y(), v.z()}); }

Eigen::Vector3d vec_from(const json& j) {
  if (!j.is_array() || j.size() != 3) throw std::invalid_argument("expected a 3-vector");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) fail(ErrorKind::Io, "cannot create directory " + dir.string() + ": " + ec.message());
}

fs::path checked(const fs::path& root, const std::string& relative) {
  const fs::path p = root / relative;
  if (!fs::exists(p)) fail(ErrorKind::MissingFile, "missing file: " + p.string());
  return p;
}

}  // namespace

std::string encode_poses(const Scenario& scenario) {
  std::ostringstream os;
  os << "# id width height fx fy cx cy px py pz qw qx qy qz\n";
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, " %.17g", v);
    os << buf;
  };
  for (const auto& v : scenario.views) {
    const auto& k = v.intrinsics;
    const auto& q = v.pose.orientation;
    os << v.id << ' ' << k.width << ' ' << k.height;
    for (double x : {k.fx, k.fy, k.cx, k.cy, v.pose.position.x(), v.pose.position.y(), v.pose.position.z(), q.w(),
                     q.x(), q.y(), q.z()})
      num(x);
    os << '\n';
  }
  return os.str();
}

fs::path save_scenario(const Scenario& scenario, const fs::path& dir) {
  scenario.validate();
  make_dir(dir);
  make_dir(dir / "depth");
  make_dir(dir / "masks");
  if (!scenario.images.empty()) make_dir(dir / "images");

  json views = json::array();
  for (std::size_t k = 0; k < scenario.views.size(); ++k) {
    const auto& v = scenario.views[k];
    const std::string stem = "view_" + padded(v.id);
    json rec;
    rec["id"] = v.id;
    rec["intrinsics"] = {{"width", v.intrinsics.width}, {"height", v.intrinsics.height}, {"fx", v.intrinsics.fx},
                         {"fy", v.intrinsics.fy},       {"cx", v.intrinsics.cx},         {"cy", v.intrinsics.cy}};
    const auto& q = v.pose.orientation;
    rec["pose"] = {{"position", vec_json(v.pose.position)}, {"orientation", json::array({q.w(), q.x(), q.y(), q.z()})}};
    rec["depth"] = "depth/" + stem + ".cvdz";
    write_depth(dir / rec["depth"].get<std::string>(), scenario.depths[k]);
    if (!scenario.images.empty()) {
      rec["image"] = "images/" + stem + ".pgm";
      write_file(dir / rec["image"].get<std::string>(), encode_pgm(scenario.images[k]));
    }
    views.push_back(std::move(rec));
  }

  json masks = json::array();
  for (const auto& [key, mask] : scenario.masks) {
    const std::string rel = "masks/" + padded(key.first) + "_" + padded(key.second) + ".rle";
    write_file(dir / rel, encode_mask(mask));
    masks.push_back({{"source", key.first}, {"other", key.second}, {"file", rel}});
  }

  write_graph(dir / "graph.json", scenario.gt);
  write_file(dir / "poses.txt", encode_poses(scenario));

  json manifest;
  manifest["format"] = kManifestFormat;
  manifest["version"] = kManifestVersion;
  manifest["scene_id"] = scenario.scene_id;
  manifest["seed"] = scenario.seed;
  manifest["resolution"] = scenario.resolution;
  if (scenario.coverage) manifest["coverage"] = *scenario.coverage;
  manifest["views"] = std::move(views);
  manifest["graph"] = "graph.json";
  manifest["poses"] = "poses.txt";
  manifest["masks_dir"] = "masks";
  manifest["masks"] = std::move(masks);
  const fs::path path = dir / kManifestName;
  write_file(path, manifest.dump(2) + "\n");
  return path;
}

Scenario load_scenario(const fs::path& dir) {
  const fs::path manifest_path = dir / kManifestName;
  if (!fs::exists(manifest_path)) fail(ErrorKind::MissingFile, "missing file: " + manifest_path.string());
  json m;
  try {
    m = json::parse(read_file(manifest_path));
  } catch (const json::exception& e) {
    fail(ErrorKind::Format, manifest_path.string() + ": not valid JSON (" + e.what() + ")");
  }
  const std::string origin = manifest_path.string();
  Scenario s;
  try {
    if (m.value("format", std::string{}) != kManifestFormat)
      fail(ErrorKind::Format, origin + ": not a scenario manifest");
    const int version = m.at("version").get<int>();
    if (version != kManifestVersion) {
      fail(ErrorKind::Version, origin + ": unsupported manifest version " + std::to_string(version) + " (expected " +
                                   std::to_string(kManifestVersion) + ")");
    }
    s.scene_id = m.at("scene_id").get<std::string>();
    s.seed = m.at("seed").get<std::uint64_t>();
    s.resolution = m.at("resolution").get<double>();
    if (m.contains("coverage")) s.coverage = m.at("coverage").get<double>();
    bool any_image = false;
    for (const auto& rec : m.at("views")) {
      CameraView v;
      v.id = rec.at("id").get<int>();
      const auto& k = rec.at("intrinsics");
      v.intrinsics = {k.at("width").get<int>(), k.at("height").get<int>(), k.at("fx").get<double>(),
                      k.at("fy").get<double>(), k.at("cx").get<double>(),  k.at("cy").get<double>()};
      v.pose.position = vec_from(rec.at("pose").at("position"));
      const auto& q = rec.at("pose").at("orientation");
      if (!q.is_array() || q.size() != 4) throw std::invalid_argument("orientation must be [w, x, y, z]");
      v.pose.orientation = Eigen::Quaterniond(q[0].get<double>(), q[1].get<double>(), q[2].get<double>(),
                                              q[3].get<double>());
      s.views.push_back(v);
      s.depths.push_back(read_depth(checked(dir, rec.at("depth").get<std::string>())));
      if (rec.contains("image")) {
        const auto p = checked(dir, rec.at("image").get<std::string>());
        s.images.push_back(decode_pgm(read_file(p), p.string()));
        any_image = true;
      }
    }
    require(!any_image || s.images.size() == s.views.size(), origin + ": images must be given for all views or none");
    s.gt = read_graph(checked(dir, m.at("graph").get<std::string>()));
    if (m.contains("poses")) checked(dir, m.at("poses").get<std::string>());
    for (const auto& rec : m.at("masks")) {
      const auto p = checked(dir, rec.at("file").get<std::string>());
      CovisMask mask = decode_mask(read_file(p), p.string());
      const auto key = std::make_pair(rec.at("source").get<int>(), rec.at("other").get<int>());
      require(key == std::make_pair(mask.source_view, mask.other_view), p.string() + ": header disagrees with manifest");
      s.masks.emplace(key, std::move(mask));
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::Format, origin + ": malformed manifest (" + e.what() + ")");
  } catch (const std::invalid_argument& e) {
    fail(ErrorKind::Format, origin + ": malformed manifest (" + e.what() + ")");
  }
  s.validate();
  return s;
}

Scenario import_external(const fs::path& poses_file, const fs::path& depth_dir, double resolution, double tau,
                         int jobs) {
  require(resolution > 0.0, "import: resolution must be positive");
  if (!fs::exists(poses_file)) fail(ErrorKind::InvalidInput, "import: pose file not found: " + poses_file.string());
  if (!fs::is_directory(depth_dir))
    fail(ErrorKind::InvalidInput, "import: depth directory not found: " + depth_dir.string());

  std::vector<CameraView> views;
  {
    std::istringstream in(read_file(poses_file));
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty() || line[0] == '#') continue;
      std::istringstream row(line);
      CameraView v;
      double px, py, pz, qw, qx, qy, qz;
      if (!(row >> v.id >> v.intrinsics.width >> v.intrinsics.height >> v.intrinsics.fx >> v.intrinsics.fy >>
            v.intrinsics.cx >> v.intrinsics.cy >> px >> py >> pz >> qw >> qx >> qy >> qz)) {
        fail(ErrorKind::InvalidInput, poses_file.string() + ":" + std::to_string(line_no) + ": expected 14 fields");
      }
      v.pose.position = {px, py, pz};
      v.pose.orientation = Eigen::Quaterniond(qw, qx, qy, qz);
      v.intrinsics.validate();
      v.pose.validate();
      views.push_back(v);
    }
  }
  std::vector<fs::path> depth_files;
  for (const auto& entry : fs::directory_iterator(depth_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".cvdz") depth_files.push_back(entry.path());
  }
  std::sort(depth_files.begin(), depth_files.end());
  if (depth_files.size() != views.size()) {
    fail(ErrorKind::InvalidInput, "import: " + std::to_string(views.size()) + " poses but " +
                                      std::to_string(depth_files.size()) + " depth files in " + depth_dir.string());
  }

  Scenario s;
  s.scene_id = poses_file.parent_path().filename().string();
  if (s.scene_id.empty()) s.scene_id = poses_file.stem().string();
  s.resolution = resolution;
  s.views = std::move(views);
  std::vector<SurfaceVoxelSet> cells;
  for (std::size_t k = 0; k < depth_files.size(); ++k) {
    DepthImage d;
    try {
      d = read_depth(depth_files[k]);
      d.validate();
    } catch (const Error& e) {
      fail(ErrorKind::InvalidInput, "import: unreadable depth " + depth_files[k].string() + ": " + e.what());
    }
    cells.push_back(view_cells(s.views[k], d, resolution));
    s.depths.push_back(std::move(d));
  }
  auto gt = compute_ground_truth(s.views, cells, s.depths, tau, jobs);
  s.gt = std::move(gt.graph);
  s.masks = std::move(gt.masks);
  s.validate();
  return s;
}

BoxScene read_scene(const fs::path& path) {
  if (!fs::exists(path)) fail(ErrorKind::MissingFile, "missing scene file: " + path.string());
  BoxScene scene;
  try {
    const json j = json::parse(read_file(path));
    scene.id = j.value("id", path.stem().string());
    scene.room.min = vec_from(j.at("room").at("min"));
    scene.room.max = vec_from(j.at("room").at("max"));
    scene.floor_y = j.value("floor_y", scene.room.min.y());
    if (j.contains("obstacles")) {
      for (const auto& o : j.at("obstacles")) scene.obstacles.push_back({vec_from(o.at("min")), vec_from(o.at("max"))});
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::Format, path.string() + ": malformed scene file (" + e.what() + ")");
  } catch (const std::invalid_argument& e) {
    fail(ErrorKind::Format, path.string() + ": malformed scene file (" + e.what() + ")");
  }
  scene.validate();
  return scene;
}

void write_scene(const fs::path& path, const BoxScene& scene) {
  json j;
  j["id"] = scene.id;
  j["floor_y"] = scene.floor_y;
  j["room"] = {{"min", vec_json(scene.room.min)}, {"max", vec_json(scene.room.max)}};
  json obstacles = json::array();
  for (const auto& o : scene.obstacles) obstacles.push_back({{"min", vec_json(o.min)}, {"max", vec_json(o.max)}});
  j["obstacles"] = std::move(obstacles);
  write_file(path, j.dump(2) + "\n");
}

}  // namespace covision
