#pragma once

#include "helgraph/entity_graph.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace helgraph {

inline constexpr std::string_view kFormatVersion = "1.0";
inline constexpr std::string_view kInterchangeExtension = ".helgraph.json";

/// Decodes an interchange document and builds the graph. Throws MalformedDocument,
/// UnsupportedVersion, or any buildGraph error (with the offending entity id in the message).
EntityGraph parseInterchange(std::string_view bytes);

/// Canonical encoding: entities sorted by id, relation pairs sorted, object keys sorted,
/// UTF-8 without BOM, trailing newline. Identical graphs produce identical bytes.
std::string writeInterchange(const EntityGraph& graph);

EntityGraph readInterchangeFile(const std::filesystem::path& path);
void writeInterchangeFile(const EntityGraph& graph, const std::filesystem::path& path);

} // namespace helgraph
