#include "helgraph/static_export.hpp"

#include "helgraph/inspect.hpp"
#include "helgraph/interchange.hpp"
#include "helgraph/session.hpp"

#include <fstream>
#include <memory>

#include <nlohmann/json.hpp>

namespace helgraph {
namespace detail {
const std::vector<std::pair<std::string_view, std::string_view>>& embeddedAssets();
} // namespace detail

namespace {

using nlohmann::json;

constexpr std::string_view kEngineDataPath = "core/engine-data.js";
constexpr std::string_view kGraphDataPath = "data/graph.helgraph.json";

void writeFile(const std::filesystem::path& path, std::string_view content) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw Error(ErrorCode::IoFailure, "cannot create " + path.parent_path().string() + ": " + ec.message());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
}

} // namespace

const std::vector<ViewerAsset>& viewerAssets() {
    static const std::vector<ViewerAsset> assets = [] {
        std::vector<ViewerAsset> out;
        for (const auto& [path, content] : detail::embeddedAssets()) out.push_back({path, content});
        return out;
    }();
    return assets;
}

std::optional<ViewerAsset> findViewerAsset(std::string_view path) {
    for (const auto& asset : viewerAssets()) {
        if (asset.path == path) return asset;
    }
    return std::nullopt;
}

std::string_view contentTypeFor(std::string_view path) noexcept {
    auto ends = [&](std::string_view suffix) {
        return path.size() >= suffix.size() && path.substr(path.size() - suffix.size()) == suffix;
    };
    if (ends(".html")) return "text/html; charset=utf-8";
    if (ends(".js")) return "text/javascript; charset=utf-8";
    if (ends(".css")) return "text/css; charset=utf-8";
    if (ends(".json")) return "application/json";
    return "application/octet-stream";
}

std::string engineDataScript(const EntityGraph& graph, const EngineConfig& config) {
    auto shared = std::make_shared<const EntityGraph>(graph);
    DiagramSession session(shared, config);

    auto glyphs = json::object();
    auto declarations = json::object();
    for (NodeIndex i = 0; i < graph.size(); ++i) {
        const auto& id = graph.entity(i).id;
        glyphs[id] = toJson(computeGlyph(graph, i, config.glyph, GlyphViewState{false}));
        declarations[id] = declarationString(graph, i);
    }

    auto presets = json::object();
    for (auto preset : {Preset::Default, Preset::AllTypes, Preset::ProjectDependencies, Preset::BirdsEye}) {
        session.applyPreset(preset);
        auto expanded = json::array();
        for (auto n : session.expandedNodes()) expanded.push_back(graph.entity(n).id);
        auto relations = json::object();
        for (auto name : kAllRelations) {
            relations[std::string(toString(name))] = session.relationVisibility()[static_cast<std::size_t>(name)];
        }
        auto positions = json::object();
        const auto& layout = session.layout();
        for (std::size_t k = 0; k < layout.size(); ++k) {
            positions[graph.entity(layout.nodes[k]).id] = {layout.positions[k].x, layout.positions[k].y};
        }
        presets[std::string(toString(preset))] = {
            {"expanded", expanded}, {"relationVisibility", relations}, {"positions", positions}};
    }

    const json data{
        {"graph", json::parse(writeInterchange(graph))},
        {"glyphs", glyphs},
        {"declarations", declarations},
        {"config", toJson(config)},
        {"presets", presets},
    };
    return "window.helgraphEngineData = " + data.dump() + ";\n";
}

std::vector<std::filesystem::path> exportStatic(const EntityGraph& graph, const EngineConfig& config,
                                                const std::filesystem::path& outputDirectory) {
    std::vector<std::filesystem::path> written;
    auto emit = [&](std::string_view relative, std::string_view content) {
        auto path = outputDirectory / std::filesystem::path(relative);
        writeFile(path, content);
        written.push_back(std::move(path));
    };
    for (const auto& asset : viewerAssets()) emit(asset.path, asset.content);
    emit(kGraphDataPath, writeInterchange(graph));
    emit(kEngineDataPath, engineDataScript(graph, config));
    return written;
}

} // namespace helgraph
