#pragma once

#include "tp3/privacy.hpp"

#include <string>

namespace httplib {
class Server;
}

namespace tp3 {

struct ServerConfig {
    OpParams defaults;
};

/// Installs POST /sanitize/{op} and GET /healthz. Handlers are pure per
/// request and share no mutable state.
void configure_routes(httplib::Server& srv, const ServerConfig& cfg);

/// Blocking listen; returns false if the address cannot be bound.
bool serve_http(const std::string& host, int port, const ServerConfig& cfg);

} // namespace tp3
