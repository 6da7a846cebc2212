#include "helgraph/serialize.hpp"
#include "helgraph/error.hpp"

#include <string>

namespace helgraph {
namespace {

using nlohmann::json;

[[noreturn]] void malformed(const std::string& message) {
    throw Error(ErrorCode::MalformedDocument, message);
}

const json& require(const json& object, const char* key, const std::string& where) {
    auto it = object.find(key);
    if (it == object.end()) malformed(where + ": missing field '" + key + "'");
    return *it;
}

std::string requireString(const json& object, const char* key, const std::string& where) {
    const auto& value = require(object, key, where);
    if (!value.is_string()) malformed(where + ": field '" + key + "' must be a string");
    return value.get<std::string>();
}

bool optionalBool(const json& object, const char* key, const std::string& where) {
    auto it = object.find(key);
    if (it == object.end()) return false;
    if (!it->is_boolean()) malformed(where + ": field '" + key + "' must be a boolean");
    return it->get<bool>();
}

template <typename Enum, typename Parser>
std::optional<Enum> optionalEnum(const json& object, const char* key, const std::string& where,
                                 Parser parse) {
    auto it = object.find(key);
    if (it == object.end()) return std::nullopt;
    if (!it->is_string()) malformed(where + ": field '" + key + "' must be a string");
    auto value = parse(it->get<std::string>());
    if (!value) malformed(where + ": unknown " + key + " '" + it->get<std::string>() + "'");
    return value;
}

} // namespace

json toJson(const Diagnostic& diagnostic) {
    return json{{"severity", toString(diagnostic.severity)},
                {"code", diagnostic.code},
                {"message", diagnostic.message}};
}

json toJson(const DocComment& comment) {
    json out{{"summary", comment.summary}};
    if (comment.remarks) out["remarks"] = *comment.remarks;
    return out;
}

json toJson(const Entity& e) {
    json out{{"id", e.id}, {"name", e.name}, {"kind", toString(e.kind)}};
    if (e.typeKind) {
        out["typeKind"] = toString(*e.typeKind);
        out["isRecord"] = e.isRecord;
    }
    if (e.methodKind) out["methodKind"] = toString(*e.methodKind);
    if (e.accessibility) out["accessibility"] = toString(*e.accessibility);
    out["modifiers"] = json{{"isStatic", e.modifiers.isStatic},
                            {"isAbstract", e.modifiers.isAbstract},
                            {"isSealed", e.modifiers.isSealed}};
    if (e.comment) out["comment"] = toJson(*e.comment);
    out["diagnostics"] = json::array();
    for (const auto& d : e.diagnostics) out["diagnostics"].push_back(toJson(d));
    return out;
}

Entity entityFromJson(const json& object) {
    if (!object.is_object()) malformed("entity record must be an object");
    Entity e;
    e.id = requireString(object, "id", "entity");
    const std::string where = "entity '" + e.id + "'";
    e.name = requireString(object, "name", where);
    auto kind = parseEntityKind(requireString(object, "kind", where));
    if (!kind) malformed(where + ": unknown kind '" + object["kind"].get<std::string>() + "'");
    e.kind = *kind;
    e.typeKind = optionalEnum<TypeKind>(object, "typeKind", where, parseTypeKind);
    e.isRecord = optionalBool(object, "isRecord", where);
    e.methodKind = optionalEnum<MethodKind>(object, "methodKind", where, parseMethodKind);
    e.accessibility =
        optionalEnum<Accessibility>(object, "accessibility", where, parseAccessibility);

    if (auto it = object.find("modifiers"); it != object.end()) {
        if (!it->is_object()) malformed(where + ": modifiers must be an object");
        e.modifiers.isStatic = optionalBool(*it, "isStatic", where);
        e.modifiers.isAbstract = optionalBool(*it, "isAbstract", where);
        e.modifiers.isSealed = optionalBool(*it, "isSealed", where);
    }
    if (auto it = object.find("comment"); it != object.end() && !it->is_null()) {
        if (!it->is_object()) malformed(where + ": comment must be an object");
        DocComment comment;
        comment.summary = requireString(*it, "summary", where + " comment");
        if (auto r = it->find("remarks"); r != it->end() && !r->is_null()) {
            if (!r->is_string()) malformed(where + ": remarks must be a string");
            comment.remarks = r->get<std::string>();
        }
        e.comment = std::move(comment);
    }
    if (auto it = object.find("diagnostics"); it != object.end()) {
        if (!it->is_array()) malformed(where + ": diagnostics must be an array");
        for (const auto& d : *it) {
            if (!d.is_object()) malformed(where + ": diagnostic must be an object");
            Diagnostic diagnostic;
            auto severity = parseSeverity(requireString(d, "severity", where + " diagnostic"));
            if (!severity) malformed(where + ": unknown diagnostic severity");
            diagnostic.severity = *severity;
            diagnostic.code = requireString(d, "code", where + " diagnostic");
            if (auto m = d.find("message"); m != d.end()) {
                if (!m->is_string()) malformed(where + ": diagnostic message must be a string");
                diagnostic.message = m->get<std::string>();
            }
            e.diagnostics.push_back(std::move(diagnostic));
        }
    }
    return e;
}

} // namespace helgraph
