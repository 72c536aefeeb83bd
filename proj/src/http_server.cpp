#include "edge/http_server.hpp"

#include <filesystem>

#include "httplib.h"

namespace edge::service {
namespace {

using nlohmann::json;

void send(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, const ApiError& e) { send(res, e.status(), e.body()); }

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  try {
    return json::parse(req.body);
  } catch (const json::parse_error& e) {
    throw ApiError(400, "bad_request", std::string("malformed JSON: ") + e.what());
  }
}

/// Runs `handler`, mapping library errors onto the error body.
template <typename F>
httplib::Server::Handler api(F handler) {
  return [handler](const httplib::Request& req, httplib::Response& res) {
    try {
      send(res, 200, handler(req));
    } catch (const ApiError& e) {
      send_error(res, e);
    } catch (const IllegalMoveError& e) {
      send_error(res, ApiError(409, "illegal_move", e.what(), e.check().duplicate));
    } catch (const NodeLimitError& e) {
      send_error(res, ApiError(503, "resource_limit", e.what()));
    } catch (const Error& e) {
      send_error(res, ApiError(400, "bad_request", e.what()));
    } catch (const json::exception& e) {
      send_error(res, ApiError(400, "bad_request", e.what()));
    }
  };
}

}  // namespace

HttpServer::HttpServer(SessionStore& store, ServerConfig config)
    : store_(store), config_(std::move(config)), server_(std::make_unique<httplib::Server>()) {
  auto& s = *server_;
  // httplib defaults to SO_REUSEPORT, which lets a second server share a busy port.
  s.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
  });
  const std::string id = R"(/api/games/([0-9A-Za-z_-]+))";

  s.Get("/api/health", api([this](const httplib::Request&) {
          return json{{"status", "ok"}, {"sessions", store_.size()}};
        }));
  s.Post("/api/games", api([this](const httplib::Request& req) {
           return store_.create(CreateRequest::from_json(parse_body(req)));
         }));
  s.Get(id, api([this](const httplib::Request& req) { return store_.get(req.matches[1]); }));
  s.Post(id + "/moves", api([this](const httplib::Request& req) {
           return store_.move(req.matches[1], MoveRequest::from_json(parse_body(req)));
         }));
  s.Post(id + "/undo",
         api([this](const httplib::Request& req) { return store_.undo(req.matches[1]); }));
  s.Get(id + "/hint",
        api([this](const httplib::Request& req) { return store_.hint(req.matches[1]); }));

  s.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    std::string detail = "internal error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      detail = e.what();
    } catch (...) {
    }
    send(res, 500, json{{"error", "internal"}, {"detail", detail}});
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind() {
  if (config_.static_dir) {
    if (!std::filesystem::is_directory(*config_.static_dir) ||
        !server_->set_mount_point("/", *config_.static_dir)) {
      throw Error("static directory not found: " + *config_.static_dir);
    }
  }
  if (config_.port == 0) {
    port_ = server_->bind_to_any_port(config_.host);
    if (port_ < 0) throw Error("cannot bind " + config_.host);
  } else {
    if (!server_->bind_to_port(config_.host, config_.port)) {
      throw Error("cannot bind " + config_.host + ":" + std::to_string(config_.port));
    }
    port_ = config_.port;
  }
  return port_;
}

void HttpServer::run() { server_->listen_after_bind(); }

void HttpServer::stop() {
  if (server_) server_->stop();
}

}  // namespace edge::service
