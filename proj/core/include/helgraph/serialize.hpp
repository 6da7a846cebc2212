#pragma once

// JSON encodings shared by the interchange format and the session API.

#include "helgraph/entity.hpp"

#include <nlohmann/json.hpp>

namespace helgraph {

nlohmann::json toJson(const Entity& entity);
/// Throws Error(MalformedDocument) on missing or mistyped fields.
Entity entityFromJson(const nlohmann::json& json);

nlohmann::json toJson(const Diagnostic& diagnostic);
nlohmann::json toJson(const DocComment& comment);

} // namespace helgraph
