#include "helgraph/interchange.hpp"
#include "helgraph/serialize.hpp"

#include <fstream>
#include <sstream>

namespace helgraph {

using nlohmann::json;

EntityGraph parseInterchange(std::string_view bytes) {
    json doc;
    try {
        doc = json::parse(bytes.begin(), bytes.end());
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::MalformedDocument,
                    "invalid JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    if (!doc.is_object()) throw Error(ErrorCode::MalformedDocument, "document must be an object");

    auto version = doc.find("formatVersion");
    if (version == doc.end() || !version->is_string()) {
        throw Error(ErrorCode::MalformedDocument, "missing formatVersion");
    }
    if (version->get<std::string>() != kFormatVersion) {
        throw Error(ErrorCode::UnsupportedVersion,
                    "formatVersion '" + version->get<std::string>() + "' is not supported (expected " +
                        std::string(kFormatVersion) + ")");
    }

    GraphMetadata metadata;
    metadata.formatVersion = std::string(kFormatVersion);
    if (auto meta = doc.find("metadata"); meta != doc.end()) {
        if (!meta->is_object()) throw Error(ErrorCode::MalformedDocument, "metadata must be an object");
        if (auto label = meta->find("label"); label != meta->end()) {
            if (!label->is_string()) {
                throw Error(ErrorCode::MalformedDocument, "metadata.label must be a string");
            }
            metadata.label = label->get<std::string>();
        }
    }

    auto entitiesJson = doc.find("entities");
    if (entitiesJson == doc.end() || !entitiesJson->is_array()) {
        throw Error(ErrorCode::MalformedDocument, "entities must be an array");
    }
    std::vector<Entity> entities;
    entities.reserve(entitiesJson->size());
    for (std::size_t i = 0; i < entitiesJson->size(); ++i) {
        try {
            entities.push_back(entityFromJson((*entitiesJson)[i]));
        } catch (const Error& e) {
            throw Error(e.code(), "entities[" + std::to_string(i) + "]: " + e.what());
        }
    }

    std::vector<Relation> relations;
    if (auto rel = doc.find("relations"); rel != doc.end()) {
        if (!rel->is_object()) throw Error(ErrorCode::MalformedDocument, "relations must be an object");
        for (const auto& [key, pairs] : rel->items()) {
            auto name = parseRelationName(key);
            if (!name) throw Error(ErrorCode::MalformedDocument, "unknown relation '" + key + "'");
            if (!pairs.is_array()) {
                throw Error(ErrorCode::MalformedDocument, "relation '" + key + "' must be an array");
            }
            Relation relation{*name, {}};
            for (const auto& pair : pairs) {
                if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() ||
                    !pair[1].is_string()) {
                    throw Error(ErrorCode::MalformedDocument,
                                "relation '" + key + "' entries must be [sourceId, targetId]");
                }
                relation.edges.push_back({pair[0].get<std::string>(), pair[1].get<std::string>()});
            }
            relations.push_back(std::move(relation));
        }
    }

    return EntityGraph::build(std::move(entities), std::move(relations), std::move(metadata));
}

std::string writeInterchange(const EntityGraph& graph) {
    json doc;
    doc["formatVersion"] = kFormatVersion;
    doc["metadata"] = json{{"label", graph.metadata().label}};
    doc["entities"] = json::array();
    for (const auto& e : graph.entities()) doc["entities"].push_back(toJson(e));
    json relations = json::object();
    for (auto name : kAllRelations) {
        auto& pairs = relations[std::string(toString(name))] = json::array();
        for (const auto& edge : graph.edges(name)) {
            pairs.push_back(json::array(
                {graph.entity(edge.source).id, graph.entity(edge.target).id}));
        }
    }
    doc["relations"] = std::move(relations);
    return doc.dump(1, '\t') + "\n";
}

EntityGraph readInterchangeFile(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parseInterchange(buffer.str());
}

void writeInterchangeFile(const EntityGraph& graph, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
    out << writeInterchange(graph);
    if (!out) throw Error(ErrorCode::IoFailure, "write failed for " + path.string());
}

} // namespace helgraph
