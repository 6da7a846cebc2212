#pragma once

#include "helgraph/config.hpp"
#include "helgraph/session.hpp"

#include <chrono>
#include <condition_variable>
#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace helgraph {

struct ApiRequest {
    std::string method; // "GET", "POST", "PUT"
    std::string path;
    std::map<std::string, std::string> query;
    std::string body;
};

struct ApiResponse {
    int status = 200;
    std::string contentType = "application/json";
    std::string body;
};

/// Immutable position frame pushed to stream subscribers.
struct LayoutSnapshot {
    std::uint64_t version = 0;
    std::size_t iteration = 0;
    bool converged = false;
    /// False once the auto-layout run that produced this frame has finished.
    bool running = false;
    /// {"version", "iteration", "converged", "running", "positions": {id: [x, y]}}
    std::string json;
};

/// Latest-value channel between the session writer and stream readers.
class SnapshotHub {
public:
    void publish(LayoutSnapshot snapshot);
    std::shared_ptr<const LayoutSnapshot> latest() const;
    /// Blocks until a snapshot newer than `afterVersion` exists; null on timeout or close.
    std::shared_ptr<const LayoutSnapshot> waitNewer(std::uint64_t afterVersion,
                                                    std::chrono::milliseconds timeout) const;
    /// Wakes every waiter; later waits return immediately.
    void close();
    bool closed() const;

private:
    mutable std::mutex mutex_;
    mutable std::condition_variable changed_;
    std::shared_ptr<const LayoutSnapshot> latest_;
    bool closed_ = false;
};

/// Transport-independent handler for the session endpoints. Requests are serialized;
/// one session per instance.
class SessionApi {
public:
    SessionApi(std::shared_ptr<const EntityGraph> graph, EngineConfig config);

    ApiResponse handle(const ApiRequest& request);

    SnapshotHub& hub() noexcept { return hub_; }
    double snapshotRate() const;

    /// Runs `fn` with the session under the request lock.
    template <class Fn>
    auto withSession(Fn&& fn) {
        std::lock_guard lock(mutex_);
        return fn(*session_);
    }

private:
    ApiResponse route(const ApiRequest& request);
    void publishFrame(const LayoutState& state, bool running);

    std::shared_ptr<const EntityGraph> graph_;
    std::mutex mutex_;
    SnapshotHub hub_;
    std::uint64_t version_ = 0;
    std::chrono::steady_clock::time_point lastPublish_{};
    double rate_ = 30.0;
    std::unique_ptr<DiagramSession> session_;
};

/// HTTP status for an engine error code.
int httpStatus(ErrorCode code) noexcept;

} // namespace helgraph
