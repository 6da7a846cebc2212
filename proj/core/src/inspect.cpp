#include "helgraph/inspect.hpp"

#include "helgraph/serialize.hpp"
#include "helgraph/session.hpp"

#include <nlohmann/json.hpp>

namespace helgraph {
namespace {

std::string_view accessibilityWords(Accessibility access) {
    switch (access) {
    case Accessibility::Public: return "public";
    case Accessibility::Internal: return "internal";
    case Accessibility::Protected: return "protected";
    case Accessibility::ProtectedInternal: return "protected internal";
    case Accessibility::PrivateProtected: return "private protected";
    case Accessibility::Private: return "private";
    }
    return "";
}

std::string_view keyword(const Entity& e) {
    if (e.kind == EntityKind::Type && e.typeKind) return toString(*e.typeKind);
    return toString(e.kind);
}

} // namespace

std::string declarationString(const EntityGraph& graph, NodeIndex node) {
    const auto& e = graph.entity(node);
    if (e.kind == EntityKind::Solution) return e.name;

    std::vector<std::string_view> words;
    if (e.accessibility) words.push_back(accessibilityWords(*e.accessibility));
    if (e.modifiers.isStatic) words.push_back("static");
    if (e.modifiers.isAbstract) words.push_back("abstract");
    if (e.modifiers.isSealed) words.push_back("sealed");
    if (e.isRecord) words.push_back("record");
    words.push_back(keyword(e));
    words.push_back(e.name);

    std::string out;
    for (auto w : words) {
        if (!out.empty()) out += ' ';
        out += w;
    }
    std::vector<std::string_view> bases;
    for (auto target : graph.outgoing(RelationName::InheritsFrom, node)) bases.push_back(graph.entity(target).name);
    if (!bases.empty()) {
        out += " : ";
        for (std::size_t i = 0; i < bases.size(); ++i) {
            if (i) out += ", ";
            out += bases[i];
        }
    }
    return out;
}

InspectPayload inspectEntity(const DiagramSession& session, std::string_view id) {
    const auto& graph = session.graph();
    const auto node = graph.indexOf(id);
    InspectPayload p;
    p.entity = graph.entity(node);
    p.declaration = declarationString(graph, node);
    p.glyph = session.glyph(node);
    p.visible = session.isVisible(node);
    for (auto name : kAllRelations) {
        auto& n = p.neighbors[static_cast<std::size_t>(name)];
        for (auto t : graph.outgoing(name, node)) n.outgoing.push_back(graph.entity(t).id);
        for (auto s : graph.incoming(name, node)) n.incoming.push_back(graph.entity(s).id);
    }
    return p;
}

nlohmann::json toJson(const InspectPayload& p) {
    auto j = nlohmann::json::object();
    j["entity"] = toJson(p.entity);
    j["declaration"] = p.declaration;
    j["glyph"] = toJson(p.glyph);
    j["visible"] = p.visible;
    auto neighbors = nlohmann::json::object();
    for (auto name : kAllRelations) {
        const auto& n = p.neighbors[static_cast<std::size_t>(name)];
        neighbors[std::string(toString(name))] = {{"outgoing", n.outgoing}, {"incoming", n.incoming}};
    }
    j["neighbors"] = std::move(neighbors);
    return j;
}

} // namespace helgraph
