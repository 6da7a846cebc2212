#pragma once

#include "helgraph/entity_graph.hpp"
#include "helgraph/glyph.hpp"

#include <array>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace helgraph {

class DiagramSession;

/// Ids adjacent to one entity through a single relation, both directions, sorted.
struct RelationNeighbors {
    std::vector<std::string> outgoing;
    std::vector<std::string> incoming;
};

struct InspectPayload {
    Entity entity;
    std::string declaration;
    GlyphSpec glyph;
    bool visible = false;
    std::array<RelationNeighbors, kRelationCount> neighbors;
};

/// "[accessibility] [static|abstract|sealed] [record] keyword Name [: Base, ...]".
/// Solutions render as their name alone. Bases are inheritsFrom targets in id order.
std::string declarationString(const EntityGraph& graph, NodeIndex node);

/// Works for hidden nodes too. Throws UnknownId.
InspectPayload inspectEntity(const DiagramSession& session, std::string_view id);

nlohmann::json toJson(const InspectPayload& payload);

} // namespace helgraph
