#pragma once

#include "helgraph/entity_graph.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace helgraph {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2& operator+=(Vec2 o) noexcept { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(Vec2 o) noexcept { x -= o.x; y -= o.y; return *this; }
    friend Vec2 operator+(Vec2 a, Vec2 b) noexcept { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) noexcept { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(Vec2 a, double s) noexcept { return {a.x * s, a.y * s}; }
    friend bool operator==(Vec2, Vec2) = default;

    double norm() const noexcept { return std::sqrt(x * x + y * y); }
};

// ---------------------------------------------------------------------------
// Radial tidy tree
// ---------------------------------------------------------------------------

struct TidyTreeConfig {
    double ringGap = 120.0;
};

struct TreeSlot {
    NodeIndex node = kNoNode;
    /// Nearest visible declares ancestor, or kNoNode for slice roots.
    NodeIndex sliceParent = kNoNode;
    NodeIndex root = kNoNode;
    std::uint32_t depth = 0;
    std::uint32_t leafCount = 0;
    /// Angular span in radians, [spanStart, spanEnd).
    double spanStart = 0.0;
    double spanEnd = 0.0;
    Vec2 center;
    Vec2 position;
};

struct TidyTreeResult {
    std::vector<TreeSlot> slots; // sorted by node

    const TreeSlot& slot(NodeIndex node) const;
};

/// Circular dendrogram over the declares slice induced by `visible`. Each visible node
/// hangs under its nearest visible ancestor; nodes with none are slice roots, laid out
/// around their own centers left to right (the first at the origin). Throws
/// NotATreeSlice for ids outside the graph or duplicates.
TidyTreeResult tidyTreeLayout(const EntityGraph& graph, std::span<const NodeIndex> visible,
                              const TidyTreeConfig& config = {});

// ---------------------------------------------------------------------------
// Force-directed refinement
// ---------------------------------------------------------------------------

struct ForceConfig {
    double repulsionScale = 10.0;
    double gravity = 1.0;
    double edgeWeightInfluence = 0.0;
    double tractionThreshold = 1.0;
    std::size_t maxIterations = 1000;
    double barnesHutTheta = 1.2;
    std::size_t barnesHutCutover = 2000;
    double jitterTolerance = 1.0;
    std::uint64_t seed = 0;

    friend bool operator==(const ForceConfig&, const ForceConfig&) = default;
};

/// Edge between two slots of a LayoutState.
struct LayoutEdge {
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    double weight = 1.0;
};

struct LayoutState {
    std::vector<NodeIndex> nodes; // sorted; positions etc. are parallel to it
    std::vector<Vec2> positions;
    std::vector<Vec2> previousForces;
    std::vector<std::uint8_t> pinned;
    bool converged = false;
    std::size_t iteration = 0;
    double speed = 1.0;
    double speedEfficiency = 1.0;
    double meanTraction = 0.0;

    std::size_t size() const noexcept { return nodes.size(); }
    std::optional<std::uint32_t> slot(NodeIndex node) const;
    Vec2 position(NodeIndex node) const; // throws UnknownId
    bool isPinned(NodeIndex node) const;

    /// Fresh state from a tidy-tree seeding (forces zero, nothing pinned).
    static LayoutState fromTree(const TidyTreeResult& tree);

    friend bool operator==(const LayoutState&, const LayoutState&) = default;
};

/// Edges of the enabled relations whose endpoints are both present in `state`.
std::vector<LayoutEdge> collectLayoutEdges(const EntityGraph& graph, const LayoutState& state,
                                           const std::array<bool, kRelationCount>& enabled);

/// One iteration: linear attraction along edges, degree-weighted 1/d repulsion
/// (Barnes-Hut beyond the cutover), degree-weighted gravity toward the origin, and
/// swing-damped adaptive speed. Pinned nodes exert force but do not move.
LayoutState forceStep(LayoutState state, std::span<const LayoutEdge> edges,
                      const ForceConfig& config);

/// Called with the state after each iteration of runAutoLayout.
using LayoutObserver = std::function<void(const LayoutState&)>;

/// Iterates forceStep until the mean traction over unpinned nodes drops below the
/// threshold (converged) or maxIterations steps have run.
LayoutState runAutoLayout(LayoutState state, std::span<const LayoutEdge> edges,
                          const ForceConfig& config, const LayoutObserver& observer = {});

/// Moves a node; pin=true keeps it fixed in later steps, pin=false releases it.
LayoutState applyUserMove(LayoutState state, NodeIndex node, Vec2 position, bool pin);

/// Carries positions over to a new visible set. Surviving nodes keep position and pin;
/// new nodes start at their nearest positioned ancestor plus a small deterministic
/// offset. Adaptive speed restarts.
LayoutState reconcileLayout(const LayoutState& previous, const EntityGraph& graph,
                            std::span<const NodeIndex> visible, std::uint64_t seed,
                            double jitterRadius = 10.0);

} // namespace helgraph
