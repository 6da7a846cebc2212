#include "helgraph/filter.hpp"

#include <algorithm>
#include <cctype>

#include <nlohmann/json.hpp>

namespace helgraph {
namespace {

using nlohmann::json;

const std::vector<FilterOperator> kStringOps{FilterOperator::Equals, FilterOperator::Contains,
                                             FilterOperator::StartsWith, FilterOperator::MatchesRegex};
const std::vector<FilterOperator> kIntegerOps{FilterOperator::Equals,  FilterOperator::NotEquals,
                                              FilterOperator::Less,    FilterOperator::LessEqual,
                                              FilterOperator::Greater, FilterOperator::GreaterEqual};
const std::vector<FilterOperator> kBooleanOps{FilterOperator::Is};
const std::vector<FilterOperator> kEnumOps{FilterOperator::Equals, FilterOperator::OneOf};

template <typename Enum, std::size_t N>
std::vector<std::string> names(const std::array<Enum, N>& values) {
    std::vector<std::string> out;
    for (auto v : values) out.emplace_back(toString(v));
    return out;
}

std::vector<PropertyInfo> makeCatalog() {
    auto string = [](PropertyId id, std::string_view name) {
        return PropertyInfo{id, name, ValueType::String, kStringOps, {}};
    };
    auto integer = [](PropertyId id, std::string_view name) {
        return PropertyInfo{id, name, ValueType::Integer, kIntegerOps, {}};
    };
    auto boolean = [](PropertyId id, std::string_view name) {
        return PropertyInfo{id, name, ValueType::Boolean, kBooleanOps, {}};
    };
    auto enumeration = [](PropertyId id, std::string_view name, std::vector<std::string> domain) {
        return PropertyInfo{id, name, ValueType::Enumeration, kEnumOps, std::move(domain)};
    };
    return {
        string(PropertyId::Name, "name"),
        enumeration(PropertyId::Kind, "kind", names(kAllEntityKinds)),
        enumeration(PropertyId::TypeKind, "typeKind", names(kAllTypeKinds)),
        enumeration(PropertyId::MethodKind, "methodKind", names(kAllMethodKinds)),
        enumeration(PropertyId::Accessibility, "accessibility", names(kAllAccessibilities)),
        boolean(PropertyId::IsStatic, "isStatic"),
        boolean(PropertyId::IsAbstract, "isAbstract"),
        boolean(PropertyId::IsSealed, "isSealed"),
        boolean(PropertyId::IsRecord, "isRecord"),
        integer(PropertyId::MemberCount, "memberCount"),
        integer(PropertyId::SubtreeHeight, "subtreeHeight"),
        boolean(PropertyId::HasOwnError, "hasOwnError"),
        boolean(PropertyId::HasOwnWarning, "hasOwnWarning"),
        boolean(PropertyId::HasSubtreeError, "hasSubtreeError"),
        boolean(PropertyId::HasSubtreeWarning, "hasSubtreeWarning"),
        string(PropertyId::CommentText, "commentText"),
        string(PropertyId::ProjectName, "projectName"),
        string(PropertyId::NamespacePath, "namespacePath"),
    };
}

std::string lowerAscii(std::string_view text) {
    std::string out(text);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::shared_ptr<const std::regex> compile(const std::string& pattern) {
    try {
        return std::make_shared<const std::regex>(pattern, std::regex::ECMAScript);
    } catch (const std::regex_error& e) {
        throw Error(ErrorCode::InvalidRegex, "'" + pattern + "': " + e.what());
    }
}

bool searchRegex(const std::regex& re, const std::string& text) {
    try {
        return std::regex_search(text, re);
    } catch (const std::regex_error&) {
        return false; // complexity limits count as no match
    }
}

struct NodeValue {
    std::variant<std::monostate, std::string, std::int64_t, bool> value;
};

NodeValue readProperty(const EntityGraph& graph, NodeIndex node, PropertyId property) {
    const auto& e = graph.entity(node);
    switch (property) {
    case PropertyId::Name: return {e.name};
    case PropertyId::Kind: return {std::string(toString(e.kind))};
    case PropertyId::TypeKind:
        if (e.typeKind) return {std::string(toString(*e.typeKind))};
        return {};
    case PropertyId::MethodKind:
        if (e.methodKind) return {std::string(toString(*e.methodKind))};
        return {};
    case PropertyId::Accessibility:
        if (e.accessibility) return {std::string(toString(*e.accessibility))};
        return {};
    case PropertyId::IsStatic: return {e.modifiers.isStatic};
    case PropertyId::IsAbstract: return {e.modifiers.isAbstract};
    case PropertyId::IsSealed: return {e.modifiers.isSealed};
    case PropertyId::IsRecord: return {e.isRecord};
    case PropertyId::MemberCount:
        if (e.kind == EntityKind::Type) return {std::int64_t{graph.memberCounts(node).total()}};
        return {};
    case PropertyId::SubtreeHeight: return {std::int64_t{graph.subtreeHeight(node)}};
    case PropertyId::HasOwnError: return {e.hasDiagnostic(Severity::Error)};
    case PropertyId::HasOwnWarning: return {e.hasDiagnostic(Severity::Warning)};
    case PropertyId::HasSubtreeError: return {graph.diagnosticRollup(node).errorInSubtree};
    case PropertyId::HasSubtreeWarning: return {graph.diagnosticRollup(node).warningInSubtree};
    case PropertyId::CommentText: {
        if (!e.comment) return {std::string()};
        std::string text = e.comment->summary;
        if (e.comment->remarks) text += "\n" + *e.comment->remarks;
        return {std::move(text)};
    }
    case PropertyId::ProjectName:
        for (auto n = node; n != kNoNode; n = graph.parent(n)) {
            if (graph.entity(n).kind == EntityKind::Project) return {graph.entity(n).name};
        }
        return {};
    case PropertyId::NamespacePath: {
        std::vector<std::string_view> parts;
        for (auto n = node; n != kNoNode; n = graph.parent(n)) {
            if (graph.entity(n).kind == EntityKind::Namespace) parts.push_back(graph.entity(n).name);
        }
        if (parts.empty()) return {};
        std::string path;
        for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
            if (!path.empty()) path += '.';
            path += *it;
        }
        return {std::move(path)};
    }
    }
    return {};
}

void checkClause(FilterClause& clause) {
    const auto& info = propertyInfo(clause.property);
    if (std::find(info.operators.begin(), info.operators.end(), clause.op) == info.operators.end()) {
        throw Error(ErrorCode::OperatorTypeMismatch,
                    "operator '" + std::string(operatorSpelling(clause.op, info.type)) +
                        "' does not apply to " + std::string(toString(info.type)) + " property '" +
                        std::string(info.name) + "'");
    }
    auto mismatch = [&](const std::string& what) {
        throw Error(ErrorCode::OperatorTypeMismatch,
                    "property '" + std::string(info.name) + "' expects " + what);
    };
    auto inDomain = [&](const std::string& v) {
        return std::find(info.domain.begin(), info.domain.end(), v) != info.domain.end();
    };
    switch (info.type) {
    case ValueType::String:
        if (!std::holds_alternative<std::string>(clause.value)) mismatch("a string value");
        if (clause.op == FilterOperator::MatchesRegex) {
            clause.pattern = compile(std::get<std::string>(clause.value));
        }
        break;
    case ValueType::Integer:
        if (!std::holds_alternative<std::int64_t>(clause.value)) mismatch("an integer value");
        break;
    case ValueType::Boolean:
        if (!std::holds_alternative<bool>(clause.value)) mismatch("a boolean value");
        break;
    case ValueType::Enumeration:
        if (clause.op == FilterOperator::OneOf) {
            const auto* list = std::get_if<std::vector<std::string>>(&clause.value);
            if (list == nullptr || list->empty()) mismatch("a non-empty list of values");
            for (const auto& v : *list) {
                if (!inDomain(v)) mismatch("one of its enumeration values, not '" + v + "'");
            }
        } else {
            const auto* v = std::get_if<std::string>(&clause.value);
            if (v == nullptr) mismatch("an enumeration value");
            if (!inDomain(*v)) mismatch("one of its enumeration values, not '" + *v + "'");
        }
        break;
    }
}

std::optional<FilterOperator> parseOperator(std::string_view text) {
    if (text == "equals" || text == "=" || text == "==") return FilterOperator::Equals;
    if (text == "contains") return FilterOperator::Contains;
    if (text == "startsWith") return FilterOperator::StartsWith;
    if (text == "matchesRegex") return FilterOperator::MatchesRegex;
    if (text == "!=" || text == "≠") return FilterOperator::NotEquals;
    if (text == "<") return FilterOperator::Less;
    if (text == "<=" || text == "≤") return FilterOperator::LessEqual;
    if (text == ">") return FilterOperator::Greater;
    if (text == ">=" || text == "≥") return FilterOperator::GreaterEqual;
    if (text == "is") return FilterOperator::Is;
    if (text == "oneOf") return FilterOperator::OneOf;
    return std::nullopt;
}

FilterValue valueFromJson(const json& v) {
    if (v.is_boolean()) return v.get<bool>();
    if (v.is_number_integer()) return v.get<std::int64_t>();
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
        std::vector<std::string> list;
        for (const auto& item : v) {
            if (!item.is_string()) {
                throw Error(ErrorCode::OperatorTypeMismatch, "list values must be strings");
            }
            list.push_back(item.get<std::string>());
        }
        return list;
    }
    throw Error(ErrorCode::OperatorTypeMismatch, "unsupported clause value " + v.dump());
}

json valueToJson(const FilterValue& value) {
    return std::visit([](const auto& v) { return json(v); }, value);
}

} // namespace

const std::vector<PropertyInfo>& propertyCatalog() {
    static const std::vector<PropertyInfo> catalog = makeCatalog();
    return catalog;
}

const PropertyInfo& propertyInfo(PropertyId id) { return propertyCatalog()[static_cast<std::size_t>(id)]; }

std::optional<PropertyId> parsePropertyId(std::string_view name) {
    for (const auto& info : propertyCatalog()) {
        if (info.name == name) return info.id;
    }
    return std::nullopt;
}

std::string_view toString(FilterMode mode) noexcept {
    switch (mode) {
    case FilterMode::FullText: return "fullText";
    case FilterMode::Regex: return "regex";
    case FilterMode::Builder: return "builder";
    }
    return "?";
}

std::string_view toString(ValueType type) noexcept {
    switch (type) {
    case ValueType::String: return "string";
    case ValueType::Integer: return "integer";
    case ValueType::Boolean: return "boolean";
    case ValueType::Enumeration: return "enumeration";
    }
    return "?";
}

std::string_view toString(FilterApplication mode) noexcept {
    return mode == FilterApplication::Highlight ? "highlight" : "isolate";
}

std::optional<FilterApplication> parseFilterApplication(std::string_view text) noexcept {
    if (text == "highlight") return FilterApplication::Highlight;
    if (text == "isolate") return FilterApplication::Isolate;
    return std::nullopt;
}

std::string_view operatorSpelling(FilterOperator op, ValueType type) noexcept {
    switch (op) {
    case FilterOperator::Equals: return type == ValueType::Integer ? "=" : "equals";
    case FilterOperator::Contains: return "contains";
    case FilterOperator::StartsWith: return "startsWith";
    case FilterOperator::MatchesRegex: return "matchesRegex";
    case FilterOperator::NotEquals: return "!=";
    case FilterOperator::Less: return "<";
    case FilterOperator::LessEqual: return "<=";
    case FilterOperator::Greater: return ">";
    case FilterOperator::GreaterEqual: return ">=";
    case FilterOperator::Is: return "is";
    case FilterOperator::OneOf: return "oneOf";
    }
    return "?";
}

FilterQuery FilterQuery::fullText(std::string text) {
    FilterQuery q;
    q.mode = FilterMode::FullText;
    q.text = std::move(text);
    return q;
}

FilterQuery FilterQuery::regex(std::string pattern) {
    FilterQuery q;
    q.mode = FilterMode::Regex;
    q.pattern = compile(pattern);
    q.text = std::move(pattern);
    return q;
}

FilterQuery FilterQuery::builder(std::vector<FilterClause> clauses) {
    if (clauses.empty()) throw Error(ErrorCode::EmptyBuilderQuery, "builder query has no clauses");
    for (auto& clause : clauses) checkClause(clause);
    FilterQuery q;
    q.mode = FilterMode::Builder;
    q.clauses = std::move(clauses);
    return q;
}

FilterQuery parseQuery(const json& input) {
    if (!input.is_object()) throw Error(ErrorCode::MalformedDocument, "query must be an object");
    auto mode = input.find("mode");
    if (mode == input.end() || !mode->is_string()) {
        throw Error(ErrorCode::MalformedDocument, "query needs a string 'mode'");
    }
    const auto modeName = mode->get<std::string>();
    if (modeName == "fullText" || modeName == "regex") {
        auto text = input.find("text");
        if (text == input.end() || !text->is_string()) {
            throw Error(ErrorCode::MalformedDocument, "query needs a string 'text'");
        }
        return modeName == "regex" ? FilterQuery::regex(text->get<std::string>())
                                   : FilterQuery::fullText(text->get<std::string>());
    }
    if (modeName != "builder") {
        throw Error(ErrorCode::MalformedDocument, "unknown query mode '" + modeName + "'");
    }
    auto clausesJson = input.find("clauses");
    if (clausesJson == input.end() || !clausesJson->is_array() || clausesJson->empty()) {
        throw Error(ErrorCode::EmptyBuilderQuery, "builder query has no clauses");
    }
    std::vector<FilterClause> clauses;
    for (const auto& c : *clausesJson) {
        if (!c.is_object() || !c.contains("property") || !c.contains("operator") ||
            !c.contains("value") || !c["property"].is_string() || !c["operator"].is_string()) {
            throw Error(ErrorCode::MalformedDocument,
                        "clauses need string 'property', string 'operator' and 'value'");
        }
        const auto propertyName = c["property"].get<std::string>();
        auto property = parsePropertyId(propertyName);
        if (!property) throw Error(ErrorCode::UnknownProperty, "unknown property '" + propertyName + "'");
        const auto opName = c["operator"].get<std::string>();
        auto op = parseOperator(opName);
        if (!op) throw Error(ErrorCode::OperatorTypeMismatch, "unknown operator '" + opName + "'");
        clauses.push_back({*property, *op, valueFromJson(c["value"]), nullptr});
    }
    return FilterQuery::builder(std::move(clauses));
}

json toJson(const FilterQuery& query) {
    json out{{"mode", toString(query.mode)}};
    if (query.mode != FilterMode::Builder) {
        out["text"] = query.text;
        return out;
    }
    out["clauses"] = json::array();
    for (const auto& c : query.clauses) {
        const auto& info = propertyInfo(c.property);
        out["clauses"].push_back({{"property", info.name},
                                  {"operator", operatorSpelling(c.op, info.type)},
                                  {"value", valueToJson(c.value)}});
    }
    return out;
}

bool matchesClause(const EntityGraph& graph, NodeIndex node, const FilterClause& clause) {
    const auto actual = readProperty(graph, node, clause.property).value;
    if (std::holds_alternative<std::monostate>(actual)) return false;

    if (const auto* s = std::get_if<std::string>(&actual)) {
        switch (clause.op) {
        case FilterOperator::Equals: return *s == std::get<std::string>(clause.value);
        case FilterOperator::Contains:
            return s->find(std::get<std::string>(clause.value)) != std::string::npos;
        case FilterOperator::StartsWith: return s->starts_with(std::get<std::string>(clause.value));
        case FilterOperator::MatchesRegex: {
            auto re = clause.pattern ? clause.pattern : compile(std::get<std::string>(clause.value));
            return searchRegex(*re, *s);
        }
        case FilterOperator::OneOf: {
            const auto& list = std::get<std::vector<std::string>>(clause.value);
            return std::find(list.begin(), list.end(), *s) != list.end();
        }
        default: return false;
        }
    }
    if (const auto* i = std::get_if<std::int64_t>(&actual)) {
        const auto v = std::get<std::int64_t>(clause.value);
        switch (clause.op) {
        case FilterOperator::Equals: return *i == v;
        case FilterOperator::NotEquals: return *i != v;
        case FilterOperator::Less: return *i < v;
        case FilterOperator::LessEqual: return *i <= v;
        case FilterOperator::Greater: return *i > v;
        case FilterOperator::GreaterEqual: return *i >= v;
        default: return false;
        }
    }
    return std::get<bool>(actual) == std::get<bool>(clause.value);
}

std::vector<NodeIndex> evaluateQuery(const EntityGraph& graph, std::span<const NodeIndex> eligible,
                                     const FilterQuery& query) {
    std::vector<NodeIndex> matched;
    switch (query.mode) {
    case FilterMode::FullText: {
        const auto needle = lowerAscii(query.text);
        for (auto n : eligible) {
            if (lowerAscii(graph.entity(n).name).find(needle) != std::string::npos) matched.push_back(n);
        }
        break;
    }
    case FilterMode::Regex: {
        auto re = query.pattern ? query.pattern : compile(query.text);
        for (auto n : eligible) {
            if (searchRegex(*re, graph.entity(n).name)) matched.push_back(n);
        }
        break;
    }
    case FilterMode::Builder:
        for (auto n : eligible) {
            if (std::all_of(query.clauses.begin(), query.clauses.end(),
                            [&](const FilterClause& c) { return matchesClause(graph, n, c); })) {
                matched.push_back(n);
            }
        }
        break;
    }
    std::sort(matched.begin(), matched.end());
    matched.erase(std::unique(matched.begin(), matched.end()), matched.end());
    return matched;
}

} // namespace helgraph
