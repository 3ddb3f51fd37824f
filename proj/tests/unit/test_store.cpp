#include <cmath>
#include <cstring>

#include "common/error.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "json.hpp"
#include "oracles.hpp"
#include "scenarios.hpp"
#include "store/binary_io.hpp"
#include "store/graph_file.hpp"
#include "store/scenario_store.hpp"

using namespace covision;
namespace fs = std::filesystem;

namespace {

using fixture::small_scenario;

ErrorKind kind_of(const std::function<void()>& f, std::string* message = nullptr) {
  try {
    f();
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidInput;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("depth encoding layout") {
  DepthImage d(2, 1);
  d.at(0, 0) = 1.5f;
  d.at(1, 0) = 0.0f;
  const auto bytes = encode_depth(d);
  REQUIRE(bytes.size() == 4 + 8 + 8);
  CHECK(bytes.substr(0, 4) == "CVDZ");
  // height 1, width 2, little-endian
  CHECK(bytes.substr(4, 8) == std::string("\x01\x00\x00\x00\x02\x00\x00\x00", 8));
  // 1.5f = 0x3fc00000
  CHECK(bytes.substr(12, 4) == std::string("\x00\x00\xc0\x3f", 4));
  CHECK(decode_depth(bytes, "x") == d);
  std::string message;
  CHECK(kind_of([&] { decode_depth("CVDX" + bytes.substr(4), "f.cvdz"); }, &message) == ErrorKind::Format);
  CHECK(message.find("CVDZ") != std::string::npos);
  CHECK(kind_of([&] { decode_depth(bytes.substr(0, 18), "f.cvdz"); }) == ErrorKind::Format);
}

TEST_CASE("mask run-length encoding") {
  CovisMask m{5, 2, {0, 1, 1, 0, 0, 1, 0, 0, 0, 0}, 1, 4};
  const auto text = encode_mask(m);
  CHECK(text == "1 4 5 2\n1 2 2\n0 1 4\n");
  CHECK(decode_mask(text, "m") == m);
  CHECK(kind_of([] { decode_mask("1 4 5 2\n1 2 3\n0 5\n", "m"); }) == ErrorKind::Format);
  CHECK(kind_of([] { decode_mask("1 4 5 2\n5\n", "m"); }) == ErrorKind::Format);
}

TEST_CASE("pgm and bmp encodings") {
  GrayImage g(3, 2);
  g.at(0, 0) = 1.0;
  g.at(2, 1) = 128.0 / 255.0;
  const auto pgm = encode_pgm(g);
  CHECK(pgm.substr(0, 11) == "P5\n3 2\n255\n");
  CHECK(decode_pgm(pgm, "p") == g);
  CHECK(kind_of([] { decode_pgm("P2\n1 1\n255\n0", "p"); }) == ErrorKind::Format);
  const auto bmp = encode_bmp(g);
  CHECK(bmp.substr(0, 2) == "BM");
  // 54-byte header, 1024-byte palette, rows padded to 4 bytes
  CHECK(bmp.size() == 54 + 1024 + 2 * 4);
}

TEST_CASE("graph file encoding is sorted and sparse") {
  CovisGraph g({2, 5, 8});
  g.weights.set(0, 1, 0.25);
  g.weights.set(1, 2, 0.5);
  g.set_threshold(0.3);
  const auto j = nlohmann::json::parse(encode_graph(g));
  CHECK(j["nodes"] == nlohmann::json::array({2, 5, 8}));
  CHECK(j["weights"].size() == 2);
  CHECK(j["edges"] == nlohmann::json::parse("[[5, 8]]"));
  CHECK(j["tau"] == 0.3);
  const auto text = encode_graph(g);
  CHECK(text.find("\"edges\"") < text.find("\"nodes\""));
  CHECK(text.find("\"tau\"") < text.find("\"weights\""));
  CHECK(graph_from_json(j, "g") == g);
  CHECK(kind_of([] { graph_from_json(nlohmann::json::parse(R"({"nodes":[1,2],"weights":[[1,2]]})"), "g"); }) ==
        ErrorKind::Format);
}

TEST_CASE("align_nodes and resolve_adjacency") {
  CovisGraph a({1, 2, 3});
  a.weights.set(0, 2, 0.7);
  CovisGraph b({3, 1, 2});
  const auto aligned = align_nodes(a, b);
  CHECK(aligned.ids == b.ids);
  CHECK(aligned.weights.at(0, 1) == 0.7);
  CHECK(kind_of([&] { resolve_adjacency(a, nullptr); }) == ErrorKind::InvalidInput);
  const double tau = 0.5;
  CHECK(resolve_adjacency(a, &tau).edge(0, 2));
  CHECK_THROWS_AS(align_nodes(a, CovisGraph({1, 2})), Error);
}

TEST_CASE("save and load round-trip every numeric bit") {
  fixture::TempDir tmp("store");
  const auto s = small_scenario();
  REQUIRE_FALSE(s.masks.empty());
  const auto manifest = save_scenario(s, tmp / "s");
  CHECK(manifest.filename() == "manifest.json");
  const auto loaded = load_scenario(tmp / "s");
  CHECK(loaded == s);
  REQUIRE(loaded.views.size() == s.views.size());
  for (std::size_t k = 0; k < s.views.size(); ++k) {
    const auto& a = s.views[k].pose;
    const auto& b = loaded.views[k].pose;
    for (int c = 0; c < 3; ++c) CHECK(same_bits(a.position[c], b.position[c]));
    CHECK(same_bits(a.orientation.w(), b.orientation.w()));
    CHECK(same_bits(a.orientation.y(), b.orientation.y()));
    CHECK(std::memcmp(s.depths[k].values.data(), loaded.depths[k].values.data(),
                      s.depths[k].values.size() * sizeof(float)) == 0);
  }
  for (std::size_t i = 0; i < s.views.size(); ++i)
    for (std::size_t j = 0; j < s.views.size(); ++j)
      CHECK(same_bits(s.gt.weights.at(i, j), loaded.gt.weights.at(i, j)));
  CHECK(same_bits(*s.coverage, *loaded.coverage));
}

TEST_CASE("saving twice gives byte-identical files") {
  fixture::TempDir tmp("store2");
  const auto s = small_scenario();
  save_scenario(s, tmp / "a");
  save_scenario(s, tmp / "b");
  save_scenario(load_scenario(tmp / "a"), tmp / "c");
  std::size_t files = 0;
  for (const auto& e : fs::recursive_directory_iterator(tmp / "a")) {
    if (!e.is_regular_file()) continue;
    ++files;
    const auto rel = fs::relative(e.path(), tmp / "a");
    CAPTURE(rel);
    CHECK(read_file(e.path()) == read_file(tmp / "b" / rel.string()));
    CHECK(read_file(e.path()) == read_file(tmp / "c" / rel.string()));
  }
  CHECK(files == 1 + 1 + 1 + 4 + 4 + s.masks.size());
}

TEST_CASE("scenarios without images round-trip") {
  fixture::TempDir tmp("noimg");
  const auto s = small_scenario(false);
  save_scenario(s, tmp / "s");
  CHECK_FALSE(fs::exists(tmp / "s" / "images"));
  CHECK(load_scenario(tmp / "s") == s);
}

TEST_CASE("load errors have distinct kinds") {
  fixture::TempDir tmp("errors");
  const auto s = small_scenario(false);
  const auto dir = tmp / "s";
  save_scenario(s, dir);

  SUBCASE("corrupt depth magic") {
    auto bytes = read_file(dir / "depth" / "view_0000.cvdz");
    bytes[3] = 'X';
    write_file(dir / "depth" / "view_0000.cvdz", bytes);
    std::string message;
    CHECK(kind_of([&] { load_scenario(dir); }, &message) == ErrorKind::Format);
    CHECK(message.find("CVDZ") != std::string::npos);
    CHECK(message.find("view_0000.cvdz") != std::string::npos);
  }
  SUBCASE("missing mask") {
    const auto mask = dir / "masks" / "0000_0003.rle";
    REQUIRE(fs::exists(mask));
    fs::remove(mask);
    std::string message;
    CHECK(kind_of([&] { load_scenario(dir); }, &message) == ErrorKind::MissingFile);
    CHECK(message.find("0000_0003.rle") != std::string::npos);
  }
  SUBCASE("missing manifest") {
    fs::remove(dir / "manifest.json");
    CHECK(kind_of([&] { load_scenario(dir); }) == ErrorKind::MissingFile);
  }
  SUBCASE("unknown version") {
    auto m = nlohmann::json::parse(read_file(dir / "manifest.json"));
    m["version"] = 2;
    write_file(dir / "manifest.json", m.dump(2));
    CHECK(kind_of([&] { load_scenario(dir); }) == ErrorKind::Version);
  }
  SUBCASE("invariant violation") {
    auto m = nlohmann::json::parse(read_file(dir / "manifest.json"));
    m["views"][1]["id"] = 0;
    write_file(dir / "manifest.json", m.dump(2));
    CHECK(kind_of([&] { load_scenario(dir); }) == ErrorKind::InvalidInput);
  }
}

TEST_CASE("unwritable directory is an io error naming it") {
  fixture::TempDir tmp("unwritable");
  write_file(tmp / "file", "x");
  const auto target = tmp / "file" / "sub";
  std::string message;
  CHECK(kind_of([&] { save_scenario(small_scenario(false), target); }, &message) == ErrorKind::Io);
  CHECK(message.find(target.string()) != std::string::npos);
}

TEST_CASE("import of an exported scenario reproduces its weights") {
  fixture::TempDir tmp("import");
  const auto s = small_scenario(false);
  save_scenario(s, tmp / "s");
  const auto imported = import_external(tmp / "s" / "poses.txt", tmp / "s" / "depth", s.resolution, 0.0, 2);
  REQUIRE(imported.gt.ids == s.gt.ids);
  for (std::size_t i = 0; i < s.views.size(); ++i) {
    CHECK(imported.views[i].pose.position.isApprox(s.views[i].pose.position, 1e-15));
    for (std::size_t j = 0; j < s.views.size(); ++j)
      CHECK(std::abs(imported.gt.weights.at(i, j) - s.gt.weights.at(i, j)) <= 1e-12);
  }
  CHECK(imported.masks.size() == s.masks.size());
}

TEST_CASE("import rejects mismatched counts and bad depth") {
  fixture::TempDir tmp("import_bad");
  const auto s = small_scenario(false);
  save_scenario(s, tmp / "s");
  REQUIRE(fs::remove(tmp / "s" / "depth" / "view_0007.cvdz"));
  std::string message;
  CHECK(kind_of([&] { import_external(tmp / "s" / "poses.txt", tmp / "s" / "depth", 0.05); }, &message) ==
        ErrorKind::InvalidInput);
  CHECK(message.find("4 poses but 3") != std::string::npos);
  write_file(tmp / "s" / "depth" / "view_0007.cvdz", "garbage");
  CHECK(kind_of([&] { import_external(tmp / "s" / "poses.txt", tmp / "s" / "depth", 0.05); }) ==
        ErrorKind::InvalidInput);
}

TEST_CASE("two-view import matches the continuous oracle") {
  fixture::TempDir tmp("import_two");
  const auto scene = fixture::empty_room();
  const std::vector<CameraView> views = {fixture::view(0, 0.0, 2.0, 0.0), fixture::view(1, 0.6, 2.0, 0.0)};
  Scenario s;
  s.views = views;
  for (const auto& v : views) s.depths.push_back(render_depth_box(scene, v));
  fs::create_directories(tmp / "depth");
  for (std::size_t k = 0; k < views.size(); ++k)
    write_depth(tmp / "depth" / ("d" + std::to_string(k) + ".cvdz"), s.depths[k]);
  write_file(tmp / "poses.txt", encode_poses(s));
  const auto imported = import_external(tmp / "poses.txt", tmp / "depth", 0.05);
  const double expected = oracle::continuous_overlap(scene.room, views[0], views[1]);
  CHECK(expected > 0.3);
  CHECK(std::abs(imported.gt.weights.at(0, 1) - expected) <= 0.02);
}

TEST_CASE("scene files") {
  fixture::TempDir tmp("scene");
  const auto scene = read_scene(fixture::data_dir() / "room_two.json");
  CHECK(scene.obstacles.size() == 2);
  write_scene(tmp / "copy.json", scene);
  const auto again = read_scene(tmp / "copy.json");
  CHECK(again.room.min == scene.room.min);
  CHECK(again.obstacles.size() == 2);
  std::string message;
  CHECK(kind_of([&] { read_scene(tmp / "nope.json"); }, &message) == ErrorKind::MissingFile);
  CHECK(message.find("nope.json") != std::string::npos);
  write_file(tmp / "bad.json", "{\"room\": 3}");
  CHECK(kind_of([&] { read_scene(tmp / "bad.json"); }) == ErrorKind::Format);
}
