#pragma once

#include <cstdlib>
#include <map>
#include <memory>
#include <string>

#include <httplib.h>

#include "api.hpp"

namespace eulerspline::server {

inline constexpr int kDefaultPort = 8731;

/// EULERSPLINE_PORT if set and valid, else kDefaultPort.
inline int default_port() {
  if (const char* env = std::getenv("EULERSPLINE_PORT")) {
    try {
      const int p = std::stoi(env);
      if (p > 0 && p < 65536) return p;
    } catch (const std::logic_error&) {
    }
  }
  return kDefaultPort;
}

/// Registers the /api routes on a fresh server.
inline std::unique_ptr<httplib::Server> make_server() {
  auto srv = std::make_unique<httplib::Server>();
  auto bridge = [](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> query;
    for (const auto& [k, v] : req.params) query.emplace(k, v);
    const auto out = api::handle(req.method, req.path, query, req.body);
    res.status = out.status;
    res.set_content(out.body.dump(), "application/json");
  };
  srv->Get("/api/health", bridge);
  srv->Get("/api/kernel", bridge);
  for (const char* path : {"/api/smooth", "/api/discretize", "/api/rates", "/api/norms", "/api/distance"})
    srv->Post(path, bridge);
  srv->set_error_handler([](const httplib::Request& req, httplib::Response& res) {
    if (!res.body.empty()) return;
    res.set_content(api::json{{"error", "no route for " + req.method + " " + req.path}, {"kind", "not_found"}}.dump(),
                    "application/json");
  });
  return srv;
}

}  // namespace eulerspline::server
