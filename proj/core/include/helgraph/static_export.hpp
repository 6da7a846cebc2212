#pragma once

#include "helgraph/config.hpp"
#include "helgraph/entity_graph.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace helgraph {

struct ViewerAsset {
    std::string_view path; // relative to the bundle root, '/'-separated
    std::string_view content;
};

/// index.html, assets/viewer.js, assets/viewer.css and core/helgraph-core.js.
const std::vector<ViewerAsset>& viewerAssets();
std::optional<ViewerAsset> findViewerAsset(std::string_view path);
std::string_view contentTypeFor(std::string_view path) noexcept;

/// Data consumed by the in-process core: glyphs, declarations, the configuration and
/// one converged layout per preset. Deterministic for fixed inputs.
std::string engineDataScript(const EntityGraph& graph, const EngineConfig& config);

/// Writes the viewer assets, data/graph.helgraph.json and core/engine-data.js under
/// `outputDirectory`, creating it if needed. Returns the written paths in bundle order.
/// Throws IoFailure.
std::vector<std::filesystem::path> exportStatic(const EntityGraph& graph, const EngineConfig& config,
                                                const std::filesystem::path& outputDirectory);

} // namespace helgraph
