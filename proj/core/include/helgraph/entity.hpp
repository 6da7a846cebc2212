#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace helgraph {

/// Containment order: solution > project > namespace > type > member > parameter.
/// Packages hang off the solution and are dependsOn targets.
enum class EntityKind : std::uint8_t {
    Solution,
    Project,
    Package,
    Namespace,
    Type,
    Field,
    Method,
    Property,
    Event,
    Parameter,
};

enum class TypeKind : std::uint8_t { Class, Struct, Enum, Interface, Delegate };

enum class MethodKind : std::uint8_t { Ordinary, Constructor, Getter, Setter, Operator };

enum class Accessibility : std::uint8_t {
    Public,
    Internal,
    Protected,
    ProtectedInternal,
    PrivateProtected,
    Private,
};

enum class Severity : std::uint8_t { Error, Warning, Info };

inline constexpr std::array kAllEntityKinds{
    EntityKind::Solution, EntityKind::Project, EntityKind::Package, EntityKind::Namespace,
    EntityKind::Type,     EntityKind::Field,   EntityKind::Method,  EntityKind::Property,
    EntityKind::Event,    EntityKind::Parameter,
};
inline constexpr std::array kAllTypeKinds{TypeKind::Class, TypeKind::Struct, TypeKind::Enum,
                                          TypeKind::Interface, TypeKind::Delegate};
inline constexpr std::array kAllMethodKinds{MethodKind::Ordinary, MethodKind::Constructor,
                                            MethodKind::Getter, MethodKind::Setter,
                                            MethodKind::Operator};
inline constexpr std::array kAllAccessibilities{
    Accessibility::Public,           Accessibility::Internal,
    Accessibility::Protected,        Accessibility::ProtectedInternal,
    Accessibility::PrivateProtected, Accessibility::Private,
};

std::string_view toString(EntityKind kind) noexcept;
std::string_view toString(TypeKind kind) noexcept;
std::string_view toString(MethodKind kind) noexcept;
std::string_view toString(Accessibility access) noexcept;
std::string_view toString(Severity severity) noexcept;

std::optional<EntityKind> parseEntityKind(std::string_view text) noexcept;
std::optional<TypeKind> parseTypeKind(std::string_view text) noexcept;
std::optional<MethodKind> parseMethodKind(std::string_view text) noexcept;
std::optional<Accessibility> parseAccessibility(std::string_view text) noexcept;
std::optional<Severity> parseSeverity(std::string_view text) noexcept;

/// Field, method, property or event.
constexpr bool isMemberKind(EntityKind kind) noexcept {
    return kind == EntityKind::Field || kind == EntityKind::Method ||
           kind == EntityKind::Property || kind == EntityKind::Event;
}

/// Kinds that form the structural skeleton and grow with subtree height.
constexpr bool isStructuralKind(EntityKind kind) noexcept {
    return kind == EntityKind::Solution || kind == EntityKind::Project ||
           kind == EntityKind::Namespace;
}

struct Diagnostic {
    Severity severity = Severity::Info;
    std::string code;
    std::string message;

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

struct Modifiers {
    bool isStatic = false;
    bool isAbstract = false;
    bool isSealed = false;

    friend bool operator==(const Modifiers&, const Modifiers&) = default;
};

struct DocComment {
    std::string summary;
    std::optional<std::string> remarks;

    friend bool operator==(const DocComment&, const DocComment&) = default;
};

struct Entity {
    std::string id;
    std::string name;
    EntityKind kind = EntityKind::Solution;
    std::optional<TypeKind> typeKind;
    bool isRecord = false; // class and struct types only
    std::optional<MethodKind> methodKind;
    std::optional<Accessibility> accessibility;
    Modifiers modifiers;
    std::optional<DocComment> comment;
    std::vector<Diagnostic> diagnostics;

    bool hasDiagnostic(Severity severity) const noexcept;

    friend bool operator==(const Entity&, const Entity&) = default;
};

enum class RelationName : std::uint8_t {
    Declares,
    InheritsFrom,
    TypeOf,
    Returns,
    DependsOn,
    References,
};

inline constexpr std::size_t kRelationCount = 6;
inline constexpr std::array kAllRelations{
    RelationName::Declares, RelationName::InheritsFrom, RelationName::TypeOf,
    RelationName::Returns,  RelationName::DependsOn,    RelationName::References,
};

std::string_view toString(RelationName name) noexcept;
std::optional<RelationName> parseRelationName(std::string_view text) noexcept;

struct Edge {
    std::string source;
    std::string target;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Relation {
    RelationName name = RelationName::Declares;
    std::vector<Edge> edges;
};

} // namespace helgraph
