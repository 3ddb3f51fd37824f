#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "graph/covis_graph.hpp"

namespace covision {

enum class Verdict { Connected, NotConnected, Flagged };

std::string_view to_string(Verdict verdict);
std::optional<Verdict> parse_verdict(std::string_view text);

struct AnnotationEvent {
  std::string scenario_id;
  int i = 0;  // view ids, i < j
  int j = 0;
  std::string annotator;
  Verdict verdict = Verdict::NotConnected;
  std::int64_t timestamp_ms = 0;

  bool operator==(const AnnotationEvent&) const = default;
};

std::string encode_event(const AnnotationEvent& event);
AnnotationEvent decode_event(const std::string& line, const std::string& origin);

// Append-only JSON-lines file. Every append is flushed before returning.
class AnnotationLog {
 public:
  explicit AnnotationLog(std::filesystem::path path);

  /// Events already on disk, in file order.
  const std::vector<AnnotationEvent>& events() const { return events_; }
  void append(const AnnotationEvent& event);
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::vector<AnnotationEvent> events_;
};

using ViewPair = std::pair<int, int>;

/// Latest verdict per (annotator, pair), later log entries winning.
std::map<std::string, std::map<ViewPair, Verdict>> latest_verdicts(const std::vector<AnnotationEvent>& events);

struct PairVerdicts {
  ViewPair pair;
  std::map<std::string, Verdict> by_annotator;

  bool operator==(const PairVerdicts&) const = default;
};

struct AgreementReport {
  std::string scenario_id;
  std::vector<PairVerdicts> table;  // every pair with at least one verdict
  std::vector<ViewPair> agreed;     // >= 2 non-flagged verdicts, all equal
  std::vector<ViewPair> conflicts;  // >= 2 non-flagged verdicts that differ
  std::vector<ViewPair> flagged;    // some annotator's latest verdict is a flag
  std::map<std::string, double> completion;

  bool operator==(const AgreementReport&) const = default;
};

AgreementReport make_agreement(const std::string& scenario_id, const std::vector<AnnotationEvent>& events,
                               std::size_t total_pairs);

struct HumanGraph {
  CovisGraph graph;  // weight 1 on connected pairs, adjacency set
  double iou = 0.0;
  bool partial = false;
  std::size_t labeled = 0;
  std::size_t total = 0;
};

/// Adjacency from one annotator's latest verdicts, scored against `truth`.
/// Unlabeled and flagged pairs count as not connected.
HumanGraph make_human_graph(const std::vector<AnnotationEvent>& events, const std::string& annotator,
                            const std::vector<int>& ids, const Adjacency& truth);

}  // namespace covision
