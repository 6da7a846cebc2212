#pragma once

#include "helgraph/glyph.hpp"
#include "helgraph/layout.hpp"

#include <array>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

namespace helgraph {

struct RelationStyle {
    std::string color;
    double thickness = 1.0;

    friend bool operator==(const RelationStyle&, const RelationStyle&) = default;
};

struct EngineConfig {
    GlyphStyle glyph;
    ForceConfig force;
    TidyTreeConfig tree;
    /// Offset of nodes revealed by expansion from their parent, in world units.
    double expansionJitter = 10.0;
    /// Upper bound on pushed layout snapshots per second.
    double snapshotRate = 30.0;
    std::array<RelationStyle, kRelationCount> relationStyles{{
        {"#7F7F7F", 2.0}, // declares
        {"#2CA02C", 1.5}, // inheritsFrom
        {"#1F77B4", 1.0}, // typeOf
        {"#9467BD", 1.0}, // returns
        {"#D62728", 2.5}, // dependsOn
        {"#BCBD22", 1.0}, // references
    }};

    friend bool operator==(const EngineConfig& a, const EngineConfig& b) {
        return a.glyph == b.glyph && a.force == b.force && a.tree.ringGap == b.tree.ringGap &&
               a.expansionJitter == b.expansionJitter && a.snapshotRate == b.snapshotRate &&
               a.relationStyles == b.relationStyles;
    }
};

inline constexpr const char* kConfigEnvironmentVariable = "HELGRAPH_CONFIG";

nlohmann::json toJson(const EngineConfig& config);

/// Applies the keys present in `json` on top of `base`; absent keys keep their value.
/// Throws MalformedDocument for unknown keys or ill-typed values.
EngineConfig configFromJson(const nlohmann::json& json, const EngineConfig& base = {});

/// HELGRAPH_CONFIG, when set, replaces `explicitPath`. With neither, defaults are returned.
std::optional<std::filesystem::path> resolveConfigPath(
    const std::optional<std::filesystem::path>& explicitPath);

EngineConfig loadConfig(const std::optional<std::filesystem::path>& explicitPath = std::nullopt);

} // namespace helgraph
