#pragma once

// Local HTTP + WebSocket service over turtle sessions.
//
//   POST /api/session                      {"r": float, "N"?: int, "dimension"?: 2|3}
//   POST /api/session/{id}/command         {"cmd": "fd"}
//   GET  /api/session/{id}                 session summary
//   GET  /api/session/{id}/svg             trace scene as SVG
//   GET  /api/session/{id}/arcs            trace scene arc descriptors
//   GET  /api/classify?r=
//   GET  /api/breakpoints
//   GET  /api/overlay/tiling?n=&depth=     arc descriptors (format=svg for SVG)
//   GET  /api/overlay/tree?r=&depth=
//   GET  /api/overlay/orbit?r=&depth=
//   WS   /api/session/{id}/stream          one JSON message per event
//
// Every mutation rewrites <data_dir>/<id>.json before the response is sent.

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "hyperbot/turtle.hpp"

namespace hyperbot {

struct ApiResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

class SessionStore {
 public:
  using Listener = std::function<void(const std::string&)>;

  // Loads every readable session file in data_dir (created if missing).
  explicit SessionStore(std::filesystem::path data_dir);

  ApiResponse handle(const std::string& method, const std::string& target, const std::string& body);

  // Returns 0 when the session does not exist.
  std::uint64_t subscribe(const std::string& id, Listener fn);
  void unsubscribe(std::uint64_t token);

  std::size_t size() const;

 private:
  struct Slot {
    std::mutex mutex;  // serializes commands on this session
    std::unique_ptr<TurtleSession> session;
  };

  std::shared_ptr<Slot> find(const std::string& id) const;
  void persist(const TurtleSession& s) const;
  void publish(const std::string& id, const std::string& message);

  ApiResponse create(const std::string& body);
  ApiResponse command(const std::string& id, const std::string& body);

  std::filesystem::path dir_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
  std::map<std::uint64_t, std::pair<std::string, Listener>> listeners_;
  std::uint64_t next_token_ = 1;
};

struct ServiceOptions {
  std::string address = "127.0.0.1";
  unsigned short port = 8080;  // 0 picks a free port
  std::filesystem::path data_dir = "sessions";
  int threads = 2;
};

class Service {
 public:
  // Binds immediately; throws std::runtime_error when the port is busy.
  explicit Service(ServiceOptions options);
  ~Service();

  unsigned short port() const;
  // Serves until stop() is called.
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace hyperbot
