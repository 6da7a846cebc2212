#pragma once

#include "helgraph/entity_graph.hpp"

#include <filesystem>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace helgraph::testing {

inline Entity entity(std::string id, EntityKind kind, std::string name = {}) {
    Entity e;
    e.name = name.empty() ? id : std::move(name);
    e.id = std::move(id);
    e.kind = kind;
    return e;
}

inline Entity type(std::string id, TypeKind typeKind, std::string name = {}) {
    auto e = entity(std::move(id), EntityKind::Type, std::move(name));
    e.typeKind = typeKind;
    e.accessibility = Accessibility::Public;
    return e;
}

inline Entity member(std::string id, EntityKind kind, bool isStatic = false) {
    auto e = entity(std::move(id), kind);
    e.accessibility = Accessibility::Public;
    e.modifiers.isStatic = isStatic;
    if (kind == EntityKind::Method) e.methodKind = MethodKind::Ordinary;
    return e;
}

inline Entity withDiagnostic(Entity e, Severity severity) {
    e.diagnostics.push_back({severity, severity == Severity::Error ? "E1" : "W1", "diagnostic"});
    return e;
}

using Pairs = std::vector<std::pair<std::string, std::string>>;

inline Relation relation(RelationName name, const Pairs& pairs) {
    Relation r{name, {}};
    for (const auto& [a, b] : pairs) r.edges.push_back({a, b});
    return r;
}

inline Relation declares(const Pairs& pairs) { return relation(RelationName::Declares, pairs); }

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag);
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

std::string readFile(const std::filesystem::path& path);
void writeFile(const std::filesystem::path& path, const std::string& content);

} // namespace helgraph::testing
