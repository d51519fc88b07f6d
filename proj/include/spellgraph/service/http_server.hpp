#pragma once

#include <memory>
#include <string>
#include <thread>

#include "spellgraph/service/service.hpp"

namespace httplib {
class Server;
}

namespace spellgraph::service {

/// JSON-over-HTTP front end for a Service. Errors come back as
/// {"error": <code>, "message": <text>} with the mapped status.
class HttpServer {
 public:
  explicit HttpServer(Service& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds and serves on a background thread. Port 0 picks a free port.
  /// Returns the bound port; throws std::runtime_error if binding fails.
  int start(const std::string& host, int port);
  /// Binds and serves on the calling thread until stop().
  void run(const std::string& host, int port);
  void stop();

  int port() const noexcept { return port_; }

 private:
  void install_routes();

  Service& service_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace spellgraph::service
