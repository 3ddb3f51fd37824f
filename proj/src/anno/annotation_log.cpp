#include "anno/annotation_log.hpp"

#include <set>
#include <sstream>

#include "common/error.hpp"
#include "json.hpp"

namespace covision {

using nlohmann::json;

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Connected: return "connected";
    case Verdict::NotConnected: return "not-connected";
    case Verdict::Flagged: return "flagged";
  }
  return "unknown";
}

std::optional<Verdict> parse_verdict(std::string_view text) {
  if (text == "connected") return Verdict::Connected;
  if (text == "not-connected") return Verdict::NotConnected;
  if (text == "flagged") return Verdict::Flagged;
  return std::nullopt;
}

std::string encode_event(const AnnotationEvent& e) {
  json j;
  j["scenario"] = e.scenario_id;
  j["i"] = e.i;
  j["j"] = e.j;
  j["annotator"] = e.annotator;
  j["verdict"] = std::string(to_string(e.verdict));
  j["timestamp"] = e.timestamp_ms;
  return j.dump();
}

AnnotationEvent decode_event(const std::string& line, const std::string& origin) {
  try {
    const json j = json::parse(line);
    AnnotationEvent e;
    e.scenario_id = j.at("scenario").get<std::string>();
    e.i = j.at("i").get<int>();
    e.j = j.at("j").get<int>();
    e.annotator = j.at("annotator").get<std::string>();
    const auto v = parse_verdict(j.at("verdict").get<std::string>());
    if (!v) fail(ErrorKind::Format, origin + ": unknown verdict");
    e.verdict = *v;
    e.timestamp_ms = j.at("timestamp").get<std::int64_t>();
    return e;
  } catch (const json::exception& ex) {
    fail(ErrorKind::Format, origin + ": malformed annotation event (" + ex.what() + ")");
  }
}

AnnotationLog::AnnotationLog(std::filesystem::path path) : path_(std::move(path)) {
  if (std::filesystem::exists(path_)) {
    std::ifstream in(path_);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      events_.push_back(decode_event(line, path_.string() + ":" + std::to_string(line_no)));
    }
  }
  out_.open(path_, std::ios::app);
  if (!out_) fail(ErrorKind::Io, "cannot open annotation log " + path_.string());
}

void AnnotationLog::append(const AnnotationEvent& event) {
  out_ << encode_event(event) << '\n';
  out_.flush();
  if (!out_) fail(ErrorKind::Io, "failed appending to " + path_.string());
  events_.push_back(event);
}

std::map<std::string, std::map<ViewPair, Verdict>> latest_verdicts(const std::vector<AnnotationEvent>& events) {
  std::map<std::string, std::map<ViewPair, Verdict>> latest;
  for (const auto& e : events) latest[e.annotator][{e.i, e.j}] = e.verdict;
  return latest;
}

AgreementReport make_agreement(const std::string& scenario_id, const std::vector<AnnotationEvent>& events,
                               std::size_t total_pairs) {
  AgreementReport report;
  report.scenario_id = scenario_id;
  const auto latest = latest_verdicts(events);
  std::map<ViewPair, std::map<std::string, Verdict>> by_pair;
  for (const auto& [annotator, verdicts] : latest) {
    report.completion[annotator] =
        total_pairs == 0 ? 0.0 : static_cast<double>(verdicts.size()) / static_cast<double>(total_pairs);
    for (const auto& [pair, verdict] : verdicts) by_pair[pair][annotator] = verdict;
  }
  for (const auto& [pair, verdicts] : by_pair) {
    report.table.push_back({pair, verdicts});
    std::set<Verdict> decided;
    std::size_t decided_count = 0;
    bool any_flag = false;
    for (const auto& [annotator, verdict] : verdicts) {
      if (verdict == Verdict::Flagged) {
        any_flag = true;
      } else {
        decided.insert(verdict);
        ++decided_count;
      }
    }
    if (any_flag) report.flagged.push_back(pair);
    if (decided_count >= 2) {
      if (decided.size() == 1) {
        report.agreed.push_back(pair);
      } else {
        report.conflicts.push_back(pair);
      }
    }
  }
  return report;
}

HumanGraph make_human_graph(const std::vector<AnnotationEvent>& events, const std::string& annotator,
                            const std::vector<int>& ids, const Adjacency& truth) {
  const auto latest = latest_verdicts(events);
  const auto it = latest.find(annotator);
  if (it == latest.end()) fail(ErrorKind::NotFound, "no labels from annotator '" + annotator + "'");
  HumanGraph out;
  out.graph = CovisGraph(ids);
  Adjacency adj(ids.size());
  for (const auto& [pair, verdict] : it->second) {
    if (verdict != Verdict::Connected) continue;
    const auto a = out.graph.index_of(pair.first);
    const auto b = out.graph.index_of(pair.second);
    adj.set(a, b);
    out.graph.weights.set(a, b, 1.0);
  }
  out.total = ids.size() * (ids.size() - (ids.empty() ? 0 : 1)) / 2;
  out.labeled = it->second.size();
  out.partial = out.labeled < out.total;
  out.iou = graph_iou(adj, truth);
  out.graph.adjacency = std::move(adj);
  return out;
}

}  // namespace covision
