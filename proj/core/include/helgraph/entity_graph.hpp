#pragma once

#include "helgraph/entity.hpp"
#include "helgraph/error.hpp"

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace helgraph {

/// Position of an entity inside an EntityGraph. Entities are stored sorted by id,
/// so index order and id order coincide.
using NodeIndex = std::uint32_t;
inline constexpr NodeIndex kNoNode = std::numeric_limits<NodeIndex>::max();

struct IndexEdge {
    NodeIndex source = kNoNode;
    NodeIndex target = kNoNode;

    friend auto operator<=>(const IndexEdge&, const IndexEdge&) = default;
};

struct GraphMetadata {
    std::string label;
    std::string formatVersion = "1.0";

    friend bool operator==(const GraphMetadata&, const GraphMetadata&) = default;
};

struct MemberCounts {
    int staticCount = 0;
    int instanceCount = 0;

    int total() const noexcept { return staticCount + instanceCount; }
    friend bool operator==(const MemberCounts&, const MemberCounts&) = default;
};

struct DiagnosticRollup {
    bool errorInSubtree = false;
    bool warningInSubtree = false;

    friend bool operator==(const DiagnosticRollup&, const DiagnosticRollup&) = default;
};

/// One broken invariant, with the ids (or edge endpoints) involved.
struct Violation {
    ErrorCode code;
    std::string message;
    std::vector<std::string> context;
};

/// Immutable, validated entity graph. Construct with EntityGraph::build; every
/// accessor is const and the object is safe to share between threads.
class EntityGraph {
public:
    /// Throws Error carrying the first violated invariant.
    static EntityGraph build(std::vector<Entity> entities, std::vector<Relation> relations,
                             GraphMetadata metadata = {});

    std::size_t size() const noexcept { return entities_.size(); }
    std::span<const Entity> entities() const noexcept { return entities_; }
    const Entity& entity(NodeIndex index) const { return entities_.at(index); }
    const GraphMetadata& metadata() const noexcept { return metadata_; }

    std::optional<NodeIndex> find(std::string_view id) const;
    /// Like find, but throws UnknownId.
    NodeIndex indexOf(std::string_view id) const;

    /// Edges sorted by (source, target).
    std::span<const IndexEdge> edges(RelationName relation) const noexcept {
        return edges_[static_cast<std::size_t>(relation)];
    }
    std::span<const NodeIndex> outgoing(RelationName relation, NodeIndex node) const;
    std::span<const NodeIndex> incoming(RelationName relation, NodeIndex node) const;

    /// declares parent, or kNoNode for solutions.
    NodeIndex parent(NodeIndex node) const { return parent_.at(node); }
    std::span<const NodeIndex> children(NodeIndex node) const {
        return outgoing(RelationName::Declares, node);
    }
    std::span<const NodeIndex> roots() const noexcept { return roots_; }
    bool isAncestor(NodeIndex ancestor, NodeIndex node) const;
    std::size_t depth(NodeIndex node) const { return depth_.at(node); }

    int subtreeHeight(NodeIndex node) const { return height_.at(node); }
    int subtreeHeight(std::string_view id) const { return subtreeHeight(indexOf(id)); }

    /// Direct field/method/property/event children of a type, split by isStatic.
    MemberCounts memberCounts(NodeIndex typeNode) const;
    MemberCounts memberCounts(std::string_view typeId) const { return memberCounts(indexOf(typeId)); }

    /// Diagnostics of strict descendants; the node's own diagnostics are excluded.
    DiagnosticRollup diagnosticRollup(NodeIndex node) const { return rollup_.at(node); }
    DiagnosticRollup diagnosticRollup(std::string_view id) const {
        return diagnosticRollup(indexOf(id));
    }

    /// Relations with string endpoints, edges sorted lexicographically.
    std::vector<Relation> relations() const;

    friend bool operator==(const EntityGraph& a, const EntityGraph& b) {
        return a.metadata_ == b.metadata_ && a.entities_ == b.entities_ && a.edges_ == b.edges_;
    }

private:
    struct Adjacency {
        std::vector<std::uint32_t> offsets;
        std::vector<NodeIndex> targets;

        std::span<const NodeIndex> at(NodeIndex node) const {
            return std::span<const NodeIndex>(targets).subspan(offsets[node],
                                                               offsets[node + 1] - offsets[node]);
        }
    };

    EntityGraph() = default;
    void index();

    GraphMetadata metadata_;
    std::vector<Entity> entities_;
    std::array<std::vector<IndexEdge>, kRelationCount> edges_;
    std::array<Adjacency, kRelationCount> out_;
    std::array<Adjacency, kRelationCount> in_;
    std::unordered_map<std::string, NodeIndex> byId_;
    std::vector<NodeIndex> parent_;
    std::vector<NodeIndex> roots_;
    std::vector<std::uint32_t> depth_;
    std::vector<int> height_;
    std::vector<MemberCounts> members_;
    std::vector<DiagnosticRollup> rollup_;
};

/// Same contract as EntityGraph::build.
inline EntityGraph buildGraph(std::vector<Entity> entities, std::vector<Relation> relations,
                              GraphMetadata metadata = {}) {
    return EntityGraph::build(std::move(entities), std::move(relations), std::move(metadata));
}

/// Every invariant violation in raw input, in detection order. Empty iff build succeeds.
std::vector<Violation> validate(std::span<const Entity> entities,
                                std::span<const Relation> relations);

/// Re-checks a constructed graph. Always empty for graphs produced by build.
std::vector<Violation> validate(const EntityGraph& graph);

} // namespace helgraph
