#include "helgraph/http_server.hpp"

#include "helgraph/static_export.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

#include <atomic>
#include <thread>

namespace helgraph {

struct HttpServer::Impl {
    std::shared_ptr<SessionApi> api;
    httplib::Server server;
    bool bound = false;
    std::atomic<bool> listening{false};
    std::atomic<bool> stopRequested{false};
};

namespace {

ApiRequest toApiRequest(const httplib::Request& req) {
    ApiRequest out;
    out.method = req.method;
    out.path = req.path;
    for (const auto& [key, value] : req.params) out.query.emplace(key, value);
    out.body = req.body;
    return out;
}

void reply(httplib::Response& res, const ApiResponse& api) {
    res.status = api.status;
    res.set_content(api.body, api.contentType);
}

} // namespace

HttpServer::HttpServer(std::shared_ptr<SessionApi> api, ServerOptions options)
    : impl_(std::make_unique<Impl>()), options_(std::move(options)) {
    impl_->api = std::move(api);
    auto& server = impl_->server;
    auto* state = impl_.get();

    auto forward = [state](const httplib::Request& req, httplib::Response& res) {
        reply(res, state->api->handle(toApiRequest(req)));
    };
    server.Get("/graph/meta", forward);
    server.Get(R"(/node/(.+))", forward);
    server.Get("/session", forward);
    server.Get("/session/state", forward);
    server.Post(R"(/session/([A-Za-z]+))", forward);
    server.Post("/filter", forward);
    server.Get("/layout", forward);
    server.Get("/glyphs", forward);
    server.Get("/config", forward);
    server.Put("/config", forward);

    // Server-sent events: one `data:` line per snapshot. Ends after the first frame of a
    // finished layout run unless ?follow=1.
    server.Get("/layout/stream", [state](const httplib::Request& req, httplib::Response& res) {
        const bool follow = req.has_param("follow") && req.get_param_value("follow") != "0";
        auto api = state->api;
        res.set_header("Cache-Control", "no-cache");
        res.set_chunked_content_provider(
            "text/event-stream",
            [api, follow, last = std::uint64_t{0}](std::size_t, httplib::DataSink& sink) mutable {
                auto& hub = api->hub();
                auto frame = hub.waitNewer(last, std::chrono::milliseconds(1000));
                if (hub.closed()) {
                    sink.done();
                    return true;
                }
                if (!frame || frame->version <= last) {
                    // Keep-alive comment so dead clients are detected.
                    return sink.write(": idle\n\n", 8);
                }
                last = frame->version;
                const std::string event = "data: " + frame->json + "\n\n";
                if (!sink.write(event.data(), event.size())) return false;
                if (!frame->running && !follow) sink.done();
                return true;
            });
    });

    auto serveAsset = [](std::string_view path, httplib::Response& res) {
        auto asset = findViewerAsset(path);
        if (!asset) {
            res.status = 404;
            res.set_content(R"({"error":{"code":"NotFound","message":"no such asset"}})", "application/json");
            return;
        }
        res.set_content(std::string(asset->content), std::string(contentTypeFor(path)));
    };
    server.Get("/", [serveAsset](const httplib::Request&, httplib::Response& res) { serveAsset("index.html", res); });
    server.Get(R"(/(assets|core)/(.+))", [serveAsset](const httplib::Request& req, httplib::Response& res) {
        serveAsset(std::string_view(req.path).substr(1), res);
    });
    server.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
        if (!res.body.empty()) return;
        const auto body = nlohmann::json{{"error", {{"code", res.status == 404 ? "NotFound" : "HttpError"},
                                                    {"message", "no route for " + req.method + " " + req.path}}}};
        res.set_content(body.dump(), "application/json");
    });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind() {
    if (impl_->bound) return port_;
    if (options_.port == 0) {
        port_ = impl_->server.bind_to_any_port(options_.host);
    } else {
        port_ = impl_->server.bind_to_port(options_.host, options_.port) ? options_.port : -1;
    }
    if (port_ <= 0) {
        throw Error(ErrorCode::IoFailure,
                    "cannot bind " + options_.host + ":" + std::to_string(options_.port));
    }
    impl_->bound = true;
    return port_;
}

void HttpServer::listen() {
    bind();
    impl_->listening = true;
    if (!impl_->stopRequested) impl_->server.listen_after_bind();
    impl_->listening = false;
}

void HttpServer::stop() {
    if (!impl_) return;
    impl_->stopRequested = true;
    impl_->api->hub().close();
    // httplib ignores stop() until its accept loop is running.
    while (impl_->listening && !impl_->server.is_running()) {
        std::this_thread::sleep_for(std::chrono::milliseconds(1));
    }
    impl_->server.stop();
}

} // namespace helgraph
