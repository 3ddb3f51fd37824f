#include "anno/anno_service.hpp"

#include <algorithm>
#include <chrono>

#include "common/error.hpp"
#include "store/scenario_store.hpp"

namespace covision {

namespace fs = std::filesystem;

AnnoService::AnnoService(const fs::path& data_root, std::uint64_t seed) : rng_(seed) {
  if (!fs::is_directory(data_root)) fail(ErrorKind::NotFound, "data root not found: " + data_root.string());
  std::vector<fs::path> dirs;
  for (const auto& e : fs::directory_iterator(data_root)) {
    if (e.is_directory() && fs::exists(e.path() / kManifestName)) dirs.push_back(e.path());
  }
  std::sort(dirs.begin(), dirs.end());
  for (const auto& dir : dirs) {
    Entry entry;
    entry.scenario = load_scenario(dir);
    const auto& views = entry.scenario.views;
    for (std::size_t a = 0; a < views.size(); ++a)
      for (std::size_t b = a + 1; b < views.size(); ++b)
        entry.pairs.emplace_back(std::min(views[a].id, views[b].id), std::max(views[a].id, views[b].id));
    std::sort(entry.pairs.begin(), entry.pairs.end());
    entry.log = std::make_unique<AnnotationLog>(dir / kAnnotationLogName);
    entries_.emplace(dir.filename().string(), std::move(entry));
  }
}

const AnnoService::Entry& AnnoService::entry(const std::string& scenario_id) const {
  const auto it = entries_.find(scenario_id);
  if (it == entries_.end()) fail(ErrorKind::NotFound, "unknown scenario '" + scenario_id + "'");
  return it->second;
}

AnnoService::Entry& AnnoService::entry(const std::string& scenario_id) {
  const auto it = entries_.find(scenario_id);
  if (it == entries_.end()) fail(ErrorKind::NotFound, "unknown scenario '" + scenario_id + "'");
  return it->second;
}

std::vector<ScenarioSummary> AnnoService::scenarios() const {
  std::vector<ScenarioSummary> out;
  for (const auto& [id, e] : entries_) out.push_back({id, e.scenario.views.size(), e.pairs.size()});
  return out;
}

NextPair AnnoService::next_pair(const std::string& scenario_id, const std::string& annotator) {
  require(!annotator.empty(), "annotator must be non-empty");
  std::lock_guard lock(mutex_);
  const Entry& e = entry(scenario_id);
  const auto latest = latest_verdicts(e.log->events());
  const auto it = latest.find(annotator);
  std::vector<ViewPair> open;
  for (const auto& p : e.pairs) {
    if (it == latest.end() || !it->second.contains(p)) open.push_back(p);
  }
  NextPair next;
  next.total = e.pairs.size();
  next.labeled = next.total - open.size();
  if (open.empty()) {
    next.done = true;
    return next;
  }
  next.pair = open[uniform_index(rng_, open.size())];
  return next;
}

std::size_t AnnoService::submit_label(AnnotationEvent event) {
  require(!event.annotator.empty(), "annotator must be non-empty");
  require(event.i < event.j, "pair must satisfy i < j");
  std::lock_guard lock(mutex_);
  Entry& e = entry(event.scenario_id);
  require(std::binary_search(e.pairs.begin(), e.pairs.end(), ViewPair{event.i, event.j}),
          "pair (" + std::to_string(event.i) + ", " + std::to_string(event.j) + ") is not in scenario '" +
              event.scenario_id + "'");
  if (event.timestamp_ms == 0) {
    event.timestamp_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::system_clock::now().time_since_epoch())
                             .count();
  }
  e.log->append(event);
  return e.log->events().size();
}

AgreementReport AnnoService::agreement(const std::string& scenario_id) const {
  std::lock_guard lock(mutex_);
  const Entry& e = entry(scenario_id);
  return make_agreement(scenario_id, e.log->events(), e.pairs.size());
}

HumanGraph AnnoService::human_graph(const std::string& scenario_id, const std::string& annotator) const {
  std::lock_guard lock(mutex_);
  const Entry& e = entry(scenario_id);
  return make_human_graph(e.log->events(), annotator, e.scenario.gt.ids, *e.scenario.gt.adjacency);
}

GrayImage AnnoService::image(const std::string& scenario_id, int view_id) const {
  std::lock_guard lock(mutex_);
  const Entry& e = entry(scenario_id);
  const auto& ids = e.scenario.gt.ids;
  const auto it = std::find(ids.begin(), ids.end(), view_id);
  if (it == ids.end() || e.scenario.images.empty()) {
    fail(ErrorKind::NotFound, "no image for view " + std::to_string(view_id) + " in '" + scenario_id + "'");
  }
  return e.scenario.images[static_cast<std::size_t>(it - ids.begin())];
}

std::vector<AnnotationEvent> AnnoService::events(const std::string& scenario_id) const {
  std::lock_guard lock(mutex_);
  return entry(scenario_id).log->events();
}

}  // namespace covision
