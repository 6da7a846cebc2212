#include "helgraph/entity.hpp"
#include "helgraph/error.hpp"

#include <algorithm>
#include <utility>

namespace helgraph {
namespace {

template <typename Enum, std::size_t N>
using NameTable = std::array<std::pair<Enum, std::string_view>, N>;

constexpr NameTable<EntityKind, 10> kEntityKindNames{{
    {EntityKind::Solution, "solution"},
    {EntityKind::Project, "project"},
    {EntityKind::Package, "package"},
    {EntityKind::Namespace, "namespace"},
    {EntityKind::Type, "type"},
    {EntityKind::Field, "field"},
    {EntityKind::Method, "method"},
    {EntityKind::Property, "property"},
    {EntityKind::Event, "event"},
    {EntityKind::Parameter, "parameter"},
}};

constexpr NameTable<TypeKind, 5> kTypeKindNames{{
    {TypeKind::Class, "class"},
    {TypeKind::Struct, "struct"},
    {TypeKind::Enum, "enum"},
    {TypeKind::Interface, "interface"},
    {TypeKind::Delegate, "delegate"},
}};

constexpr NameTable<MethodKind, 5> kMethodKindNames{{
    {MethodKind::Ordinary, "ordinary"},
    {MethodKind::Constructor, "constructor"},
    {MethodKind::Getter, "getter"},
    {MethodKind::Setter, "setter"},
    {MethodKind::Operator, "operator"},
}};

constexpr NameTable<Accessibility, 6> kAccessibilityNames{{
    {Accessibility::Public, "public"},
    {Accessibility::Internal, "internal"},
    {Accessibility::Protected, "protected"},
    {Accessibility::ProtectedInternal, "protectedInternal"},
    {Accessibility::PrivateProtected, "privateProtected"},
    {Accessibility::Private, "private"},
}};

constexpr NameTable<Severity, 3> kSeverityNames{{
    {Severity::Error, "error"},
    {Severity::Warning, "warning"},
    {Severity::Info, "info"},
}};

constexpr NameTable<RelationName, 6> kRelationNames{{
    {RelationName::Declares, "declares"},
    {RelationName::InheritsFrom, "inheritsFrom"},
    {RelationName::TypeOf, "typeOf"},
    {RelationName::Returns, "returns"},
    {RelationName::DependsOn, "dependsOn"},
    {RelationName::References, "references"},
}};

template <typename Enum, std::size_t N>
std::string_view lookupName(const NameTable<Enum, N>& table, Enum value) noexcept {
    for (const auto& [key, name] : table) {
        if (key == value) return name;
    }
    return "?";
}

template <typename Enum, std::size_t N>
std::optional<Enum> lookupValue(const NameTable<Enum, N>& table, std::string_view text) noexcept {
    for (const auto& [key, name] : table) {
        if (name == text) return key;
    }
    return std::nullopt;
}

} // namespace

std::string_view toString(EntityKind kind) noexcept { return lookupName(kEntityKindNames, kind); }
std::string_view toString(TypeKind kind) noexcept { return lookupName(kTypeKindNames, kind); }
std::string_view toString(MethodKind kind) noexcept { return lookupName(kMethodKindNames, kind); }
std::string_view toString(Accessibility access) noexcept {
    return lookupName(kAccessibilityNames, access);
}
std::string_view toString(Severity severity) noexcept { return lookupName(kSeverityNames, severity); }
std::string_view toString(RelationName name) noexcept { return lookupName(kRelationNames, name); }

std::optional<EntityKind> parseEntityKind(std::string_view text) noexcept {
    return lookupValue(kEntityKindNames, text);
}
std::optional<TypeKind> parseTypeKind(std::string_view text) noexcept {
    return lookupValue(kTypeKindNames, text);
}
std::optional<MethodKind> parseMethodKind(std::string_view text) noexcept {
    return lookupValue(kMethodKindNames, text);
}
std::optional<Accessibility> parseAccessibility(std::string_view text) noexcept {
    return lookupValue(kAccessibilityNames, text);
}
std::optional<Severity> parseSeverity(std::string_view text) noexcept {
    return lookupValue(kSeverityNames, text);
}
std::optional<RelationName> parseRelationName(std::string_view text) noexcept {
    return lookupValue(kRelationNames, text);
}

bool Entity::hasDiagnostic(Severity severity) const noexcept {
    return std::any_of(diagnostics.begin(), diagnostics.end(),
                       [severity](const Diagnostic& d) { return d.severity == severity; });
}

std::string_view toString(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::DanglingEdge: return "DanglingEdge";
    case ErrorCode::DeclaresCycle: return "DeclaresCycle";
    case ErrorCode::MultipleParents: return "MultipleParents";
    case ErrorCode::MissingParent: return "MissingParent";
    case ErrorCode::IllegalModifierCombination: return "IllegalModifierCombination";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::DependsOnCycle: return "DependsOnCycle";
    case ErrorCode::UnknownId: return "UnknownId";
    case ErrorCode::NotAType: return "NotAType";
    case ErrorCode::MalformedDocument: return "MalformedDocument";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::ExtractionFailure: return "ExtractionFailure";
    case ErrorCode::InvalidRegex: return "InvalidRegex";
    case ErrorCode::UnknownProperty: return "UnknownProperty";
    case ErrorCode::OperatorTypeMismatch: return "OperatorTypeMismatch";
    case ErrorCode::EmptyBuilderQuery: return "EmptyBuilderQuery";
    case ErrorCode::NotATreeSlice: return "NotATreeSlice";
    case ErrorCode::NotVisible: return "NotVisible";
    case ErrorCode::NoChildren: return "NoChildren";
    case ErrorCode::NotExpanded: return "NotExpanded";
    case ErrorCode::UnknownPreset: return "UnknownPreset";
    case ErrorCode::IoFailure: return "IoFailure";
    }
    return "Unknown";
}

} // namespace helgraph
