#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "anno/anno_service.hpp"
#include "json.hpp"

namespace httplib {
class Server;
}

namespace covision {

nlohmann::json agreement_to_json(const AgreementReport& report);
nlohmann::json human_graph_to_json(const HumanGraph& human, const std::string& annotator);

/// Six-decimal fixed rendering shared by the service and the CLI.
std::string format_metric(double value);

// Routes (JSON bodies, UTF-8):
//   GET  /api/scenarios
//   GET  /api/scenarios/{id}/next?annotator=NAME
//   GET  /api/scenarios/{id}/images/{view}
//   POST /api/scenarios/{id}/labels
//   GET  /api/scenarios/{id}/agreement
//   GET  /api/scenarios/{id}/human-graph?annotator=NAME
// 400 for invalid input, 404 for unknown resources.
class HttpServer {
 public:
  explicit HttpServer(AnnoService& service, const std::filesystem::path& static_dir = {});
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds; port 0 picks a free port. Returns the bound port or -1.
  int bind(const std::string& host, int port);
  /// Serves until stop() is called.
  bool listen_after_bind();
  void stop();
  void wait_until_ready() const;

 private:
  AnnoService& service_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace covision
