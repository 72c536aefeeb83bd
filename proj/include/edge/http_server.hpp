#pragma once

#include <memory>
#include <optional>
#include <string>

#include "edge/service.hpp"

namespace httplib {
class Server;
}

namespace edge::service {

struct ServerConfig {
  std::string host = "127.0.0.1";
  /// 0 picks a free port.
  int port = 8080;
  /// Directory served under "/" when set.
  std::optional<std::string> static_dir;
};

/// JSON API over HTTP:
///
///     POST /api/games              create
///     GET  /api/games/{id}         state view
///     POST /api/games/{id}/moves   {"vertex","color","player"?,"movesMade"?}
///     POST /api/games/{id}/undo
///     GET  /api/games/{id}/hint
///     GET  /api/health
///
/// Vertices and colors are 1-based. Errors answer
/// {"error": code, "detail": text, "duplicatePair": [a,b]?}.
class HttpServer {
 public:
  HttpServer(SessionStore& store, ServerConfig config);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Throws edge::Error when the port cannot be bound or the static
  /// directory does not exist. Returns the bound port.
  int bind();
  /// Blocks until stop().
  void run();
  void stop();
  int port() const { return port_; }

 private:
  SessionStore& store_;
  ServerConfig config_;
  std::unique_ptr<httplib::Server> server_;
  int port_ = 0;
};

}  // namespace edge::service
