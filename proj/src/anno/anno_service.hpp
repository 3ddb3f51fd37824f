#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "anno/annotation_log.hpp"
#include "common/rng.hpp"
#include "scenegen/scenario.hpp"

namespace covision {

inline constexpr const char* kAnnotationLogName = "annotations.jsonl";

struct ScenarioSummary {
  std::string id;
  std::size_t views;
  std::size_t pairs;
};

struct NextPair {
  bool done = false;
  ViewPair pair{};
  std::size_t labeled = 0;
  std::size_t total = 0;
};

// Annotation sessions over every scenario directory below a data root. The
// scenario id is the directory name; each keeps its own append-only log.
// All public members are thread-safe.
class AnnoService {
 public:
  AnnoService(const std::filesystem::path& data_root, std::uint64_t seed);

  std::vector<ScenarioSummary> scenarios() const;

  /// Uniformly drawn pair this annotator has not labeled yet, or done.
  NextPair next_pair(const std::string& scenario_id, const std::string& annotator);

  /// Validates and appends; returns the log length after the append.
  std::size_t submit_label(AnnotationEvent event);

  AgreementReport agreement(const std::string& scenario_id) const;
  HumanGraph human_graph(const std::string& scenario_id, const std::string& annotator) const;

  /// Rendered image of a view; not-found when absent.
  GrayImage image(const std::string& scenario_id, int view_id) const;
  std::vector<AnnotationEvent> events(const std::string& scenario_id) const;

 private:
  struct Entry {
    Scenario scenario;
    std::vector<ViewPair> pairs;
    std::unique_ptr<AnnotationLog> log;
  };

  const Entry& entry(const std::string& scenario_id) const;
  Entry& entry(const std::string& scenario_id);

  std::map<std::string, Entry> entries_;
  mutable std::mutex mutex_;
  Rng rng_;
};

}  // namespace covision
