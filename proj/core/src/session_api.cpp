#include "helgraph/session_api.hpp"

#include "helgraph/inspect.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

namespace helgraph {
namespace {

using nlohmann::json;

ApiResponse jsonResponse(const json& body, int status = 200) {
    return {status, "application/json", body.dump()};
}

ApiResponse errorResponse(int status, std::string_view code, std::string_view message) {
    return jsonResponse({{"error", {{"code", code}, {"message", message}}}}, status);
}

json parseBody(const std::string& body) {
    if (body.empty()) return json::object();
    try {
        auto j = json::parse(body);
        if (!j.is_object()) throw Error(ErrorCode::MalformedDocument, "request body must be a JSON object");
        return j;
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::MalformedDocument, std::string("request body: ") + e.what());
    }
}

std::string requireString(const json& body, const char* key) {
    auto it = body.find(key);
    if (it == body.end() || !it->is_string()) {
        throw Error(ErrorCode::MalformedDocument, std::string("'") + key + "' must be a string");
    }
    return it->get<std::string>();
}

double requireNumber(const json& body, const char* key) {
    auto it = body.find(key);
    if (it == body.end() || !it->is_number()) {
        throw Error(ErrorCode::MalformedDocument, std::string("'") + key + "' must be a number");
    }
    return it->get<double>();
}

json ids(const EntityGraph& graph, const std::vector<NodeIndex>& nodes) {
    auto out = json::array();
    for (auto n : nodes) out.push_back(graph.entity(n).id);
    return out;
}

json sessionState(const DiagramSession& s) {
    const auto& g = s.graph();
    auto relations = json::object();
    for (auto name : kAllRelations) {
        relations[std::string(toString(name))] = s.relationVisibility()[static_cast<std::size_t>(name)];
    }
    return {
        {"preset", toString(s.activePreset())},
        {"visible", ids(g, s.visibleNodes())},
        {"expanded", ids(g, s.expandedNodes())},
        {"removed", ids(g, s.removedNodes())},
        {"dimmed", ids(g, s.dimmedNodes())},
        {"selection", s.selection() ? json(g.entity(*s.selection()).id) : json(nullptr)},
        {"relationVisibility", relations},
        {"layoutRuns", s.layoutRuns()},
        {"converged", s.layout().converged},
    };
}

std::string snapshotJson(const EntityGraph& graph, const LayoutState& state, std::uint64_t version,
                         bool running) {
    auto positions = json::object();
    for (std::size_t i = 0; i < state.size(); ++i) {
        positions[graph.entity(state.nodes[i]).id] = {state.positions[i].x, state.positions[i].y};
    }
    return json{{"version", version},
                {"iteration", state.iteration},
                {"converged", state.converged},
                {"running", running},
                {"positions", positions}}
        .dump();
}

std::vector<std::string> splitIds(std::string_view text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find(',', start);
        if (end == std::string_view::npos) end = text.size();
        if (end > start) out.emplace_back(text.substr(start, end - start));
        start = end + 1;
    }
    return out;
}

} // namespace

int httpStatus(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::UnknownId: return 404;
    case ErrorCode::NotVisible:
    case ErrorCode::NoChildren:
    case ErrorCode::NotExpanded: return 409;
    case ErrorCode::MalformedDocument:
    case ErrorCode::UnsupportedVersion:
    case ErrorCode::InvalidParams:
    case ErrorCode::InvalidRegex:
    case ErrorCode::UnknownProperty:
    case ErrorCode::OperatorTypeMismatch:
    case ErrorCode::EmptyBuilderQuery:
    case ErrorCode::UnknownPreset: return 400;
    default: return 500;
    }
}

void SnapshotHub::publish(LayoutSnapshot snapshot) {
    {
        std::lock_guard lock(mutex_);
        latest_ = std::make_shared<const LayoutSnapshot>(std::move(snapshot));
    }
    changed_.notify_all();
}

std::shared_ptr<const LayoutSnapshot> SnapshotHub::latest() const {
    std::lock_guard lock(mutex_);
    return latest_;
}

std::shared_ptr<const LayoutSnapshot> SnapshotHub::waitNewer(std::uint64_t afterVersion,
                                                             std::chrono::milliseconds timeout) const {
    std::unique_lock lock(mutex_);
    changed_.wait_for(lock, timeout, [&] { return closed_ || (latest_ && latest_->version > afterVersion); });
    if (latest_ && latest_->version > afterVersion) return latest_;
    return nullptr;
}

void SnapshotHub::close() {
    {
        std::lock_guard lock(mutex_);
        closed_ = true;
    }
    changed_.notify_all();
}

bool SnapshotHub::closed() const {
    std::lock_guard lock(mutex_);
    return closed_;
}

SessionApi::SessionApi(std::shared_ptr<const EntityGraph> graph, EngineConfig config)
    : graph_(graph) {
    rate_ = config.snapshotRate;
    SessionOptions options;
    options.layoutObserver = [this](const LayoutState& state) {
        const auto now = std::chrono::steady_clock::now();
        const auto gap = std::chrono::duration<double>(1.0 / rate_);
        if (now - lastPublish_ < gap) return;
        lastPublish_ = now;
        publishFrame(state, true);
    };
    std::lock_guard lock(mutex_);
    session_ = std::make_unique<DiagramSession>(std::move(graph), std::move(config), std::move(options));
    publishFrame(session_->layout(), false);
}

double SessionApi::snapshotRate() const { return rate_; }

void SessionApi::publishFrame(const LayoutState& state, bool running) {
    const auto& graph = *graph_;
    LayoutSnapshot frame;
    frame.version = ++version_;
    frame.iteration = state.iteration;
    frame.converged = state.converged;
    frame.running = running;
    frame.json = snapshotJson(graph, state, frame.version, running);
    hub_.publish(std::move(frame));
}

ApiResponse SessionApi::handle(const ApiRequest& request) {
    std::lock_guard lock(mutex_);
    try {
        return route(request);
    } catch (const Error& e) {
        return errorResponse(httpStatus(e.code()), toString(e.code()), e.what());
    } catch (const std::exception& e) {
        return errorResponse(500, "Internal", e.what());
    }
}

ApiResponse SessionApi::route(const ApiRequest& r) {
    auto& s = *session_;
    const auto& g = s.graph();
    const auto& path = r.path;
    const bool get = r.method == "GET";
    const bool post = r.method == "POST";
    const bool put = r.method == "PUT";

    auto changed = [&] {
        publishFrame(s.layout(), false);
        return jsonResponse(sessionState(s));
    };

    if (path == "/graph/meta") {
        if (!get) return errorResponse(405, "MethodNotAllowed", "use GET");
        auto counts = json::object();
        for (auto name : kAllRelations) counts[std::string(toString(name))] = g.edges(name).size();
        std::vector<NodeIndex> roots(g.roots().begin(), g.roots().end());
        return jsonResponse({{"label", g.metadata().label},
                             {"formatVersion", g.metadata().formatVersion},
                             {"entityCount", g.size()},
                             {"relationCounts", counts},
                             {"roots", ids(g, roots)},
                             {"session", sessionState(s)}});
    }
    if (path.rfind("/node/", 0) == 0) {
        if (!get) return errorResponse(405, "MethodNotAllowed", "use GET");
        return jsonResponse(toJson(inspectEntity(s, path.substr(6))));
    }
    if (path == "/session" || path == "/session/state") {
        if (!get) return errorResponse(405, "MethodNotAllowed", "use GET");
        return jsonResponse(sessionState(s));
    }
    if (path.rfind("/session/", 0) == 0) {
        if (!post) return errorResponse(405, "MethodNotAllowed", "use POST");
        const auto op = path.substr(9);
        const auto body = parseBody(r.body);
        if (op == "expand") {
            s.expand(requireString(body, "id"));
        } else if (op == "collapse") {
            s.collapse(requireString(body, "id"));
        } else if (op == "remove") {
            s.removeSubtree(requireString(body, "id"));
        } else if (op == "refresh") {
            if (auto it = body.find("relationVisibility"); it != body.end()) {
                if (!it->is_object()) throw Error(ErrorCode::MalformedDocument, "'relationVisibility' must be an object");
                for (const auto& [key, value] : it->items()) {
                    auto name = parseRelationName(key);
                    if (!name || !value.is_boolean()) {
                        throw Error(ErrorCode::MalformedDocument, "bad relationVisibility entry '" + key + "'");
                    }
                    s.setRelationVisibility(*name, value.get<bool>());
                }
            }
            s.refresh();
        } else if (op == "preset") {
            s.applyPreset(parsePreset(requireString(body, "name")));
        } else if (op == "move") {
            const auto node = g.indexOf(requireString(body, "id"));
            bool pin = true;
            if (auto it = body.find("pin"); it != body.end()) {
                if (!it->is_boolean()) throw Error(ErrorCode::MalformedDocument, "'pin' must be a boolean");
                pin = it->get<bool>();
            }
            s.move(node, {requireNumber(body, "x"), requireNumber(body, "y")}, pin);
        } else if (op == "select") {
            auto it = body.find("id");
            if (it == body.end() || it->is_null()) {
                s.select(std::nullopt);
            } else {
                s.select(g.indexOf(requireString(body, "id")));
            }
            return jsonResponse(sessionState(s));
        } else {
            return errorResponse(404, "NotFound", "unknown session operation '" + op + "'");
        }
        return changed();
    }
    if (path == "/filter") {
        if (!post) return errorResponse(405, "MethodNotAllowed", "use POST");
        const auto body = parseBody(r.body);
        auto mode = FilterApplication::Highlight;
        if (auto it = body.find("mode"); it != body.end()) {
            auto parsed = it->is_string() ? parseFilterApplication(it->get<std::string>()) : std::nullopt;
            if (!parsed) throw Error(ErrorCode::MalformedDocument, "'mode' must be highlight or isolate");
            mode = *parsed;
        }
        auto q = body.find("query");
        if (q == body.end() || q->is_null()) {
            s.clearHighlight();
            return jsonResponse({{"matched", json::array()}, {"session", sessionState(s)}});
        }
        const auto query = parseQuery(*q);
        const auto before = s.layoutRuns();
        const auto matched = s.applyFilter(query, mode);
        if (s.layoutRuns() != before) publishFrame(s.layout(), false);
        return jsonResponse({{"matched", ids(g, matched)}, {"session", sessionState(s)}});
    }
    if (path == "/layout") {
        if (!get) return errorResponse(405, "MethodNotAllowed", "use GET");
        auto frame = hub_.latest();
        return {200, "application/json", frame ? frame->json : "{}"};
    }
    if (path == "/glyphs") {
        if (!get) return errorResponse(405, "MethodNotAllowed", "use GET");
        std::vector<NodeIndex> nodes;
        if (auto it = r.query.find("ids"); it != r.query.end()) {
            for (const auto& id : splitIds(it->second)) nodes.push_back(g.indexOf(id));
        } else {
            nodes = s.visibleNodes();
        }
        auto out = json::object();
        for (auto n : nodes) out[g.entity(n).id] = toJson(s.glyph(n));
        return jsonResponse(out);
    }
    if (path == "/config") {
        if (get) return jsonResponse(toJson(s.config()));
        if (!put) return errorResponse(405, "MethodNotAllowed", "use GET or PUT");
        auto next = configFromJson(parseBody(r.body), s.config());
        rate_ = next.snapshotRate;
        s.setConfig(std::move(next));
        return jsonResponse(toJson(s.config()));
    }
    return errorResponse(404, "NotFound", "no route for " + path);
}

} // namespace helgraph
