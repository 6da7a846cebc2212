#pragma once

#include "helgraph/session_api.hpp"

#include <memory>
#include <string>

namespace helgraph {

struct ServerOptions {
    std::string host = "127.0.0.1";
    /// 0 picks a free port.
    int port = 8080;
};

/// Serves the session API, the layout stream and the viewer over HTTP.
class HttpServer {
public:
    HttpServer(std::shared_ptr<SessionApi> api, ServerOptions options = {});
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds the socket; returns the bound port. Throws IoFailure.
    int bind();
    /// Blocks until stop(). Calls bind() first if needed.
    void listen();
    void stop();

    int port() const noexcept { return port_; }

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    ServerOptions options_;
    int port_ = 0;
};

} // namespace helgraph
