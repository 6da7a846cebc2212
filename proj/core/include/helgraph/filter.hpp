#pragma once

#include "helgraph/entity_graph.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <regex>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace helgraph {

enum class FilterMode : std::uint8_t { FullText, Regex, Builder };

enum class PropertyId : std::uint8_t {
    Name,
    Kind,
    TypeKind,
    MethodKind,
    Accessibility,
    IsStatic,
    IsAbstract,
    IsSealed,
    IsRecord,
    MemberCount,
    SubtreeHeight,
    HasOwnError,
    HasOwnWarning,
    HasSubtreeError,
    HasSubtreeWarning,
    CommentText,
    ProjectName,
    NamespacePath,
};

inline constexpr std::size_t kPropertyCount = 18;

enum class ValueType : std::uint8_t { String, Integer, Boolean, Enumeration };

enum class FilterOperator : std::uint8_t {
    Equals, // string, integer and enumeration
    Contains,
    StartsWith,
    MatchesRegex,
    NotEquals,
    Less,
    LessEqual,
    Greater,
    GreaterEqual,
    Is,
    OneOf,
};

using FilterValue = std::variant<std::string, std::int64_t, bool, std::vector<std::string>>;

struct PropertyInfo {
    PropertyId id;
    std::string_view name;
    ValueType type;
    std::vector<FilterOperator> operators;
    /// Completion list for enumeration properties, empty otherwise.
    std::vector<std::string> domain;
};

/// Every builder property in declaration order.
const std::vector<PropertyInfo>& propertyCatalog();
const PropertyInfo& propertyInfo(PropertyId id);
std::optional<PropertyId> parsePropertyId(std::string_view name);

std::string_view toString(FilterMode mode) noexcept;
std::string_view toString(ValueType type) noexcept;
/// Spelling used in serialized queries; Equals is "=" for integers and "equals" otherwise.
std::string_view operatorSpelling(FilterOperator op, ValueType type) noexcept;

struct FilterClause {
    PropertyId property = PropertyId::Name;
    FilterOperator op = FilterOperator::Equals;
    FilterValue value;
    std::shared_ptr<const std::regex> pattern; // compiled value of MatchesRegex clauses

    friend bool operator==(const FilterClause& a, const FilterClause& b) {
        return a.property == b.property && a.op == b.op && a.value == b.value;
    }
};

struct FilterQuery {
    FilterMode mode = FilterMode::FullText;
    std::string text;
    std::vector<FilterClause> clauses; // conjunction
    std::shared_ptr<const std::regex> pattern; // compiled text of regex queries

    static FilterQuery fullText(std::string text);
    /// Throws InvalidRegex.
    static FilterQuery regex(std::string pattern);
    /// Checks operator/value typing and compiles regex clauses. Throws
    /// EmptyBuilderQuery, OperatorTypeMismatch or InvalidRegex.
    static FilterQuery builder(std::vector<FilterClause> clauses);

    friend bool operator==(const FilterQuery& a, const FilterQuery& b) {
        return a.mode == b.mode && a.text == b.text && a.clauses == b.clauses;
    }
};

enum class FilterApplication : std::uint8_t { Highlight, Isolate };

std::string_view toString(FilterApplication mode) noexcept;
std::optional<FilterApplication> parseFilterApplication(std::string_view text) noexcept;

/// Parses the structured form {"mode", "text"} or {"mode": "builder", "clauses": [...]}.
/// Throws InvalidRegex, UnknownProperty, OperatorTypeMismatch, EmptyBuilderQuery, or
/// MalformedDocument for structurally broken input.
FilterQuery parseQuery(const nlohmann::json& input);
nlohmann::json toJson(const FilterQuery& query);

/// Nodes of `eligible` matching the query, sorted. Full text is a case-insensitive
/// substring of the name, regex an unanchored search in the name, builder the
/// conjunction of its clauses. A clause on a property the node lacks is false.
std::vector<NodeIndex> evaluateQuery(const EntityGraph& graph, std::span<const NodeIndex> eligible,
                                     const FilterQuery& query);

bool matchesClause(const EntityGraph& graph, NodeIndex node, const FilterClause& clause);

} // namespace helgraph
