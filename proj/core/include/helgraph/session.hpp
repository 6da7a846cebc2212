#pragma once

#include "helgraph/config.hpp"
#include "helgraph/entity_graph.hpp"
#include "helgraph/filter.hpp"
#include "helgraph/glyph.hpp"
#include "helgraph/layout.hpp"

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace helgraph {

enum class Preset : std::uint8_t { Default, AllTypes, ProjectDependencies, BirdsEye };

std::string_view toString(Preset preset) noexcept;
/// Throws UnknownPreset.
Preset parsePreset(std::string_view name);

using RelationVisibility = std::array<bool, kRelationCount>;

/// declares, inheritsFrom and dependsOn on; typeOf, returns and references off.
RelationVisibility defaultRelationVisibility() noexcept;

struct SessionOptions {
    /// Entries replace the defaults; an empty map keeps them.
    std::map<RelationName, bool> relationVisibility;
    /// Invoked after every force iteration of every auto-layout run.
    LayoutObserver layoutObserver;
};

/// Mutable exploration state over an immutable graph. A node is visible iff it is not
/// removed and every declares ancestor is expanded. Operations that change the visible
/// set, the removal set or node positions re-run the automatic layout exactly once.
/// Not thread-safe; callers serialize access (SessionApi does).
class DiagramSession {
public:
    DiagramSession(std::shared_ptr<const EntityGraph> graph, EngineConfig config,
                   SessionOptions options = {});

    const EntityGraph& graph() const noexcept { return *graph_; }
    std::shared_ptr<const EntityGraph> sharedGraph() const noexcept { return graph_; }
    const EngineConfig& config() const noexcept { return config_; }

    bool isVisible(NodeIndex node) const { return visible_.at(node) != 0; }
    bool isExpanded(NodeIndex node) const { return expanded_.at(node) != 0; }
    bool isRemoved(NodeIndex node) const { return removed_.at(node) != 0; }
    bool isDimmed(NodeIndex node) const { return dimmed_.at(node) != 0; }

    /// Sorted node lists.
    std::vector<NodeIndex> visibleNodes() const;
    std::vector<NodeIndex> expandedNodes() const;
    std::vector<NodeIndex> removedNodes() const;
    std::vector<NodeIndex> dimmedNodes() const;
    /// Nodes a filter may match: visible and not removed (which is the visible set).
    std::vector<NodeIndex> eligibleNodes() const { return visibleNodes(); }

    std::optional<NodeIndex> selection() const noexcept { return selection_; }
    Preset activePreset() const noexcept { return preset_; }
    const RelationVisibility& relationVisibility() const noexcept { return relations_; }
    const LayoutState& layout() const noexcept { return layout_; }
    /// Auto-layout runs since construction.
    std::size_t layoutRuns() const noexcept { return layoutRuns_; }

    void expand(NodeIndex node);
    void collapse(NodeIndex node);
    void removeSubtree(NodeIndex node);
    void refresh();
    void applyPreset(Preset preset);
    void select(std::optional<NodeIndex> node);
    void move(NodeIndex node, Vec2 position, bool pin);

    void expand(std::string_view id) { expand(graph_->indexOf(id)); }
    void collapse(std::string_view id) { collapse(graph_->indexOf(id)); }
    void removeSubtree(std::string_view id) { removeSubtree(graph_->indexOf(id)); }
    void applyPreset(std::string_view name) { applyPreset(parsePreset(name)); }

    /// Takes effect at the next refresh or preset.
    void setRelationVisibility(RelationName relation, bool visible);
    /// Glyph style applies immediately; layout constants at the next refresh or preset.
    void setConfig(EngineConfig config);

    /// Evaluates the query over the eligible nodes and applies it; returns the matches.
    std::vector<NodeIndex> applyFilter(const FilterQuery& query, FilterApplication mode);
    /// Highlight dims every visible non-match; isolate removes them until refresh.
    void applyFilterMode(std::span<const NodeIndex> matched, FilterApplication mode);
    void clearHighlight();

    GlyphSpec glyph(NodeIndex node) const;

private:
    void resetForPreset(Preset preset);
    void enforceInvariants();
    void reseedLayout();
    void relayoutIncremental();
    void runLayout();
    void requireVisible(NodeIndex node) const;

    std::shared_ptr<const EntityGraph> graph_;
    EngineConfig config_;
    LayoutObserver observer_;
    std::vector<std::uint8_t> expanded_;
    std::vector<std::uint8_t> removed_;
    std::vector<std::uint8_t> dimmed_;
    std::vector<std::uint8_t> visible_;
    std::vector<NodeIndex> order_; // breadth-first over declares
    std::optional<NodeIndex> selection_;
    Preset preset_ = Preset::Default;
    RelationVisibility relations_ = defaultRelationVisibility();
    LayoutState layout_;
    std::size_t layoutRuns_ = 0;
};

} // namespace helgraph
