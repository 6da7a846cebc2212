#include "helgraph/synthetic.hpp"

#include <array>
#include <random>
#include <string_view>

namespace helgraph {
namespace {

constexpr std::array<std::string_view, 20> kWords{
    "Project", "Service",    "Entity",  "Graph",   "Node",     "Layout",  "Filter",
    "Session", "Glyph",      "Cache",   "Repository", "Factory", "Builder", "Reader",
    "Writer",  "Manager",    "Provider", "Handler", "Context",  "Options",
};

constexpr std::array<std::string_view, 8> kProjectSuffixes{
    "Core", "Data", "Web", "Api", "Tests", "Tools", "Client", "Server",
};

constexpr std::array<std::string_view, 6> kCommentTopics{
    "caching", "serialization", "validation", "logging", "retry policy", "configuration",
};

// mt19937_64 is fully specified by the standard; the distribution helpers below are
// written out so the output does not depend on the standard library vendor.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(engine_() % n); }
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    bool chance(double p) { return unit() < p; }

    template <typename Container>
    const auto& pick(const Container& c) {
        return c[below(c.size())];
    }

private:
    std::mt19937_64 engine_;
};

class Generator {
public:
    explicit Generator(const SyntheticParams& params) : params_(params), rng_(params.seed) {}

    EntityGraph run() {
        Entity solution;
        solution.id = "sln";
        solution.name = params_.label.empty() ? "Solution" : params_.label;
        solution.kind = EntityKind::Solution;
        add(std::move(solution), "");

        std::vector<std::string> projects;
        for (int i = 0; i < params_.projectCount; ++i) {
            Entity project;
            project.id = "p" + std::to_string(i);
            project.name = "Sample." +
                           std::string(kProjectSuffixes[static_cast<std::size_t>(i) %
                                                        kProjectSuffixes.size()]);
            if (i >= static_cast<int>(kProjectSuffixes.size())) project.name += std::to_string(i);
            project.kind = EntityKind::Project;
            const auto projectId = project.id;
            const auto projectName = project.name;
            add(std::move(project), "sln");

            for (const auto& earlier : projects) {
                if (rng_.chance(0.4)) edge(RelationName::DependsOn, projectId, earlier);
            }
            projects.push_back(projectId);

            addNamespace(projectId, projectId + "/ns", projectName, 1);
        }

        return EntityGraph::build(std::move(entities_), relations(),
                                  GraphMetadata{params_.label, "1.0"});
    }

private:
    void add(Entity entity, const std::string& parent) {
        if (!parent.empty()) edge(RelationName::Declares, parent, entity.id);
        entities_.push_back(std::move(entity));
    }

    void edge(RelationName name, const std::string& source, const std::string& target) {
        edges_[static_cast<std::size_t>(name)].push_back({source, target});
    }

    std::vector<Relation> relations() {
        std::vector<Relation> out;
        for (auto name : kAllRelations) {
            out.push_back({name, std::move(edges_[static_cast<std::size_t>(name)])});
        }
        return out;
    }

    void addNamespace(const std::string& parent, const std::string& id, const std::string& name,
                      int depth) {
        Entity ns;
        ns.id = id;
        ns.name = name;
        ns.kind = EntityKind::Namespace;
        add(std::move(ns), parent);

        for (int t = 0; t < params_.typesPerNamespace; ++t) addType(id, id + "/T" + std::to_string(t));

        if (depth < params_.namespaceDepth) {
            const auto childCount = 1 + rng_.below(2);
            for (std::size_t c = 0; c < childCount; ++c) {
                addNamespace(id, id + "/n" + std::to_string(c),
                             std::string(rng_.pick(kWords)) + std::to_string(c), depth + 1);
            }
        }
    }

    Accessibility randomAccess() {
        auto roll = rng_.unit();
        if (roll < 0.55) return Accessibility::Public;
        if (roll < 0.75) return Accessibility::Internal;
        if (roll < 0.90) return Accessibility::Private;
        if (roll < 0.95) return Accessibility::Protected;
        if (roll < 0.98) return Accessibility::ProtectedInternal;
        return Accessibility::PrivateProtected;
    }

    void maybeComment(Entity& e) {
        if (!rng_.chance(0.6)) return;
        DocComment comment;
        comment.summary = "Handles " + std::string(rng_.pick(kCommentTopics)) + " for " + e.name + ".";
        if (rng_.chance(0.3)) {
            comment.remarks = "See also the " + std::string(rng_.pick(kCommentTopics)) + " notes.";
        }
        e.comment = std::move(comment);
    }

    void maybeDiagnostic(Entity& e) {
        if (!rng_.chance(params_.diagnosticRate)) return;
        auto roll = rng_.unit();
        Diagnostic d;
        if (roll < 0.4) {
            d = {Severity::Error, "CS0103", "The name does not exist in the current context"};
        } else if (roll < 0.9) {
            d = {Severity::Warning, "CS0168", "The variable is declared but never used"};
        } else {
            d = {Severity::Info, "IDE0051", "Private member is unused"};
        }
        e.diagnostics.push_back(std::move(d));
    }

    void addType(const std::string& parent, const std::string& id) {
        Entity type;
        type.id = id;
        type.name = std::string(rng_.pick(kWords));
        type.name += rng_.pick(kWords);
        type.kind = EntityKind::Type;
        auto roll = rng_.unit();
        type.typeKind = roll < 0.55   ? TypeKind::Class
                        : roll < 0.65 ? TypeKind::Struct
                        : roll < 0.75 ? TypeKind::Enum
                        : roll < 0.90 ? TypeKind::Interface
                                      : TypeKind::Delegate;
        const auto typeKind = *type.typeKind;
        if (typeKind == TypeKind::Class || typeKind == TypeKind::Struct) {
            type.isRecord = rng_.chance(0.2);
        }
        if (typeKind == TypeKind::Class) {
            auto m = rng_.unit();
            if (m < 0.1) {
                type.modifiers.isStatic = true;
            } else if (m < 0.25) {
                type.modifiers.isAbstract = true;
            } else if (m < 0.4) {
                type.modifiers.isSealed = true;
            }
        }
        type.accessibility = randomAccess();
        maybeComment(type);
        maybeDiagnostic(type);

        const bool staticType = type.modifiers.isStatic;
        const bool abstractType = type.modifiers.isAbstract;
        add(std::move(type), parent);

        if (typeKind == TypeKind::Class || typeKind == TypeKind::Interface) {
            auto& pool = typeKind == TypeKind::Class ? classes_ : interfaces_;
            if (!pool.empty() && rng_.chance(0.3)) edge(RelationName::InheritsFrom, id, rng_.pick(pool));
        }
        if ((typeKind == TypeKind::Class || typeKind == TypeKind::Struct) && !interfaces_.empty() &&
            rng_.chance(0.2)) {
            edge(RelationName::InheritsFrom, id, rng_.pick(interfaces_));
        }
        if (typeKind == TypeKind::Class) classes_.push_back(id);
        if (typeKind == TypeKind::Interface) interfaces_.push_back(id);
        types_.push_back(id);

        for (int m = 0; m < params_.membersPerType; ++m) {
            addMember(id, id + "/m" + std::to_string(m), typeKind, staticType, abstractType);
        }
    }

    void addMember(const std::string& parent, const std::string& id, TypeKind owner, bool staticOwner,
                   bool abstractOwner) {
        Entity member;
        member.id = id;
        if (owner == TypeKind::Enum) {
            member.kind = EntityKind::Field;
        } else {
            constexpr std::array kinds{EntityKind::Field, EntityKind::Method, EntityKind::Property,
                                       EntityKind::Event};
            member.kind = rng_.pick(kinds);
        }
        member.name = std::string(rng_.pick(kWords));
        member.name += std::to_string(rng_.below(100));
        member.accessibility = randomAccess();
        member.modifiers.isStatic = staticOwner || owner == TypeKind::Enum || rng_.chance(0.25);
        if (!member.modifiers.isStatic) {
            if (abstractOwner && rng_.chance(0.3)) {
                member.modifiers.isAbstract = true;
            } else if (rng_.chance(0.05)) {
                member.modifiers.isSealed = true;
            }
        }
        if (member.kind == EntityKind::Method) {
            auto roll = rng_.unit();
            member.methodKind = roll < 0.7    ? MethodKind::Ordinary
                                : roll < 0.8  ? MethodKind::Constructor
                                : roll < 0.85 ? MethodKind::Getter
                                : roll < 0.9  ? MethodKind::Setter
                                              : MethodKind::Operator;
        }
        maybeComment(member);
        maybeDiagnostic(member);
        const auto kind = member.kind;
        const auto methodKind = member.methodKind;
        add(std::move(member), parent);

        if (kind == EntityKind::Method) {
            if (methodKind != MethodKind::Constructor && rng_.chance(0.5)) {
                edge(RelationName::Returns, id, rng_.pick(types_));
            }
            if (!methods_.empty() && rng_.chance(0.2)) {
                edge(RelationName::References, id, rng_.pick(methods_));
            }
            methods_.push_back(id);
            const auto paramCount = rng_.below(3);
            for (std::size_t p = 0; p < paramCount; ++p) {
                Entity param;
                param.id = id + "/a" + std::to_string(p);
                param.name = "arg" + std::to_string(p);
                param.kind = EntityKind::Parameter;
                maybeDiagnostic(param);
                const auto paramId = param.id;
                add(std::move(param), id);
                if (rng_.chance(0.7)) edge(RelationName::TypeOf, paramId, rng_.pick(types_));
            }
        } else if (rng_.chance(0.7)) {
            edge(RelationName::TypeOf, id, rng_.pick(types_));
        }
    }

    SyntheticParams params_;
    Rng rng_;
    std::vector<Entity> entities_;
    std::array<std::vector<Edge>, kRelationCount> edges_;
    std::vector<std::string> types_;
    std::vector<std::string> classes_;
    std::vector<std::string> interfaces_;
    std::vector<std::string> methods_;
};

} // namespace

void checkParams(const SyntheticParams& params) {
    if (params.projectCount < 1 || params.namespaceDepth < 1 || params.typesPerNamespace < 1 ||
        params.membersPerType < 1) {
        throw Error(ErrorCode::InvalidParams, "synthetic counts must all be at least 1");
    }
    if (!(params.diagnosticRate >= 0.0 && params.diagnosticRate <= 1.0)) {
        throw Error(ErrorCode::InvalidParams, "diagnosticRate must lie in [0, 1]");
    }
}

EntityGraph generateSynthetic(const SyntheticParams& params) {
    checkParams(params);
    return Generator(params).run();
}

} // namespace helgraph
