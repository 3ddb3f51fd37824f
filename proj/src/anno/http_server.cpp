#include "anno/http_server.hpp"

#include <cstdio>

#include "common/error.hpp"
#include "httplib.h"
#include "store/binary_io.hpp"
#include "store/graph_file.hpp"

namespace covision {

using nlohmann::json;

namespace {

json pair_json(const ViewPair& p) { return json::array({p.first, p.second}); }

void send_json(httplib::Response& res, const json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json; charset=utf-8");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  send_json(res, {{"error", message}}, status);
}

template <typename Handler>
httplib::Server::Handler guarded(Handler handler) {
  return [handler](const httplib::Request& req, httplib::Response& res) {
    try {
      handler(req, res);
    } catch (const Error& e) {
      const int status = e.kind() == ErrorKind::NotFound ? 404 : e.kind() == ErrorKind::InvalidInput ? 400 : 500;
      send_error(res, status, e.what());
    } catch (const json::exception& e) {
      send_error(res, 400, std::string("malformed request body: ") + e.what());
    }
  };
}

std::string annotator_param(const httplib::Request& req) {
  const std::string name = req.get_param_value("annotator");
  require(!name.empty(), "query parameter 'annotator' is required");
  return name;
}

}  // namespace

std::string format_metric(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

json agreement_to_json(const AgreementReport& report) {
  json table = json::array();
  for (const auto& row : report.table) {
    json verdicts = json::object();
    for (const auto& [annotator, verdict] : row.by_annotator) verdicts[annotator] = std::string(to_string(verdict));
    table.push_back({{"pair", pair_json(row.pair)}, {"verdicts", verdicts}});
  }
  auto pairs = [](const std::vector<ViewPair>& v) {
    json a = json::array();
    for (const auto& p : v) a.push_back(pair_json(p));
    return a;
  };
  return {{"scenario", report.scenario_id},
          {"table", table},
          {"agreed", pairs(report.agreed)},
          {"agreed_count", report.agreed.size()},
          {"conflicts", pairs(report.conflicts)},
          {"flagged", pairs(report.flagged)},
          {"completion", report.completion}};
}

json human_graph_to_json(const HumanGraph& human, const std::string& annotator) {
  json edges = json::array();
  for (const auto& [a, b] : human.graph.adjacency->edges())
    edges.push_back({human.graph.ids[a], human.graph.ids[b]});
  return {{"annotator", annotator}, {"edges", edges},         {"iou", human.iou},
          {"iou_text", format_metric(human.iou)}, {"partial", human.partial}, {"labeled", human.labeled},
          {"total", human.total},                 {"graph", graph_to_json(human.graph)}};
}

HttpServer::HttpServer(AnnoService& service, const std::filesystem::path& static_dir)
    : service_(service), server_(std::make_unique<httplib::Server>()) {
  auto& s = *server_;
  if (!static_dir.empty()) s.set_mount_point("/", static_dir.string());

  s.Get("/api/scenarios", guarded([this](const httplib::Request&, httplib::Response& res) {
          json list = json::array();
          for (const auto& sc : service_.scenarios())
            list.push_back({{"id", sc.id}, {"views", sc.views}, {"pairs", sc.pairs}});
          send_json(res, {{"scenarios", list}});
        }));

  s.Get(R"(/api/scenarios/([^/]+)/next)", guarded([this](const httplib::Request& req, httplib::Response& res) {
          const std::string id = req.matches[1];
          const auto next = service_.next_pair(id, annotator_param(req));
          json body = {{"done", next.done}, {"labeled", next.labeled}, {"total", next.total}};
          if (!next.done) {
            body["pair"] = pair_json(next.pair);
            body["images"] = {"/api/scenarios/" + id + "/images/" + std::to_string(next.pair.first),
                              "/api/scenarios/" + id + "/images/" + std::to_string(next.pair.second)};
          }
          send_json(res, body);
        }));

  s.Get(R"(/api/scenarios/([^/]+)/images/(-?\d+))",
        guarded([this](const httplib::Request& req, httplib::Response& res) {
          const auto image = service_.image(req.matches[1], std::stoi(req.matches[2]));
          res.set_content(encode_bmp(image), "image/bmp");
        }));

  s.Post(R"(/api/scenarios/([^/]+)/labels)", guarded([this](const httplib::Request& req, httplib::Response& res) {
           const json body = json::parse(req.body);
           AnnotationEvent e;
           e.scenario_id = req.matches[1];
           e.i = body.at("i").get<int>();
           e.j = body.at("j").get<int>();
           e.annotator = body.at("annotator").get<std::string>();
           const auto verdict = parse_verdict(body.at("verdict").get<std::string>());
           require(verdict.has_value(), "verdict must be connected, not-connected or flagged");
           e.verdict = *verdict;
           e.timestamp_ms = body.value("timestamp", std::int64_t{0});
           const auto count = service_.submit_label(e);
           send_json(res, {{"ok", true}, {"events", count}});
         }));

  s.Get(R"(/api/scenarios/([^/]+)/agreement)", guarded([this](const httplib::Request& req, httplib::Response& res) {
          send_json(res, agreement_to_json(service_.agreement(req.matches[1])));
        }));

  s.Get(R"(/api/scenarios/([^/]+)/human-graph)",
        guarded([this](const httplib::Request& req, httplib::Response& res) {
          const std::string annotator = annotator_param(req);
          send_json(res, human_graph_to_json(service_.human_graph(req.matches[1], annotator), annotator));
        }));
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  return server_->bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen_after_bind() { return server_->listen_after_bind(); }

void HttpServer::stop() {
  if (server_) server_->stop();
}

void HttpServer::wait_until_ready() const { server_->wait_until_ready(); }

}  // namespace covision
