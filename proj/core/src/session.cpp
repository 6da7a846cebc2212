#include "helgraph/session.hpp"

#include <algorithm>

namespace helgraph {
namespace {

std::vector<NodeIndex> flagged(const std::vector<std::uint8_t>& flags) {
    std::vector<NodeIndex> out;
    for (NodeIndex i = 0; i < flags.size(); ++i) {
        if (flags[i]) out.push_back(i);
    }
    return out;
}

} // namespace

std::string_view toString(Preset preset) noexcept {
    switch (preset) {
    case Preset::Default: return "default";
    case Preset::AllTypes: return "allTypes";
    case Preset::ProjectDependencies: return "projectDependencies";
    case Preset::BirdsEye: return "birdsEye";
    }
    return "?";
}

Preset parsePreset(std::string_view name) {
    for (auto p : {Preset::Default, Preset::AllTypes, Preset::ProjectDependencies, Preset::BirdsEye}) {
        if (toString(p) == name) return p;
    }
    throw Error(ErrorCode::UnknownPreset, "unknown preset '" + std::string(name) + "'");
}

RelationVisibility defaultRelationVisibility() noexcept {
    RelationVisibility v{};
    v[static_cast<std::size_t>(RelationName::Declares)] = true;
    v[static_cast<std::size_t>(RelationName::InheritsFrom)] = true;
    v[static_cast<std::size_t>(RelationName::DependsOn)] = true;
    return v;
}

DiagramSession::DiagramSession(std::shared_ptr<const EntityGraph> graph, EngineConfig config,
                               SessionOptions options)
    : graph_(std::move(graph)), config_(std::move(config)), observer_(std::move(options.layoutObserver)) {
    const auto n = graph_->size();
    expanded_.assign(n, 0);
    removed_.assign(n, 0);
    dimmed_.assign(n, 0);
    visible_.assign(n, 0);
    order_.assign(graph_->roots().begin(), graph_->roots().end());
    for (std::size_t head = 0; head < order_.size(); ++head) {
        for (auto c : graph_->children(order_[head])) order_.push_back(c);
    }
    resetForPreset(Preset::Default);
    for (const auto& [relation, on] : options.relationVisibility) {
        relations_[static_cast<std::size_t>(relation)] = on;
    }
    reseedLayout();
}

// A removed ancestor does not block reachability; only expansion does.
void DiagramSession::enforceInvariants() {
    std::vector<std::uint8_t> reachable(graph_->size(), 0);
    for (auto node : order_) {
        const auto parent = graph_->parent(node);
        reachable[node] = parent == kNoNode || (reachable[parent] && expanded_[parent]) ? 1 : 0;
        visible_[node] = reachable[node] && !removed_[node] ? 1 : 0;
        if (!visible_[node]) dimmed_[node] = 0;
    }
    if (selection_ && !visible_[*selection_]) selection_.reset();
}

std::vector<NodeIndex> DiagramSession::visibleNodes() const { return flagged(visible_); }
std::vector<NodeIndex> DiagramSession::expandedNodes() const { return flagged(expanded_); }
std::vector<NodeIndex> DiagramSession::removedNodes() const { return flagged(removed_); }
std::vector<NodeIndex> DiagramSession::dimmedNodes() const { return flagged(dimmed_); }

void DiagramSession::requireVisible(NodeIndex node) const {
    if (node >= graph_->size()) throw Error(ErrorCode::UnknownId, "node index out of range");
    if (!visible_[node]) {
        throw Error(ErrorCode::NotVisible, "'" + graph_->entity(node).id + "' is not visible");
    }
}

void DiagramSession::runLayout() {
    const auto edges = collectLayoutEdges(*graph_, layout_, relations_);
    layout_ = runAutoLayout(std::move(layout_), edges, config_.force, observer_);
    ++layoutRuns_;
}

void DiagramSession::reseedLayout() {
    const auto visible = visibleNodes();
    layout_ = LayoutState::fromTree(tidyTreeLayout(*graph_, visible, config_.tree));
    runLayout();
}

void DiagramSession::relayoutIncremental() {
    const auto visible = visibleNodes();
    layout_ = reconcileLayout(layout_, *graph_, visible, config_.force.seed, config_.expansionJitter);
    runLayout();
}

void DiagramSession::expand(NodeIndex node) {
    requireVisible(node);
    if (graph_->children(node).empty()) {
        throw Error(ErrorCode::NoChildren, "'" + graph_->entity(node).id + "' has no children");
    }
    if (expanded_[node]) return;
    expanded_[node] = 1;
    enforceInvariants();
    relayoutIncremental();
}

void DiagramSession::collapse(NodeIndex node) {
    if (node >= graph_->size()) throw Error(ErrorCode::UnknownId, "node index out of range");
    if (!expanded_[node]) {
        throw Error(ErrorCode::NotExpanded, "'" + graph_->entity(node).id + "' is not expanded");
    }
    // Descendant expansion flags stay; visibility hides them.
    expanded_[node] = 0;
    enforceInvariants();
    relayoutIncremental();
}

void DiagramSession::removeSubtree(NodeIndex node) {
    requireVisible(node);
    std::vector<NodeIndex> stack{node};
    while (!stack.empty()) {
        auto cur = stack.back();
        stack.pop_back();
        removed_[cur] = 1;
        for (auto c : graph_->children(cur)) stack.push_back(c);
    }
    enforceInvariants();
    relayoutIncremental();
}

void DiagramSession::refresh() {
    std::fill(removed_.begin(), removed_.end(), 0);
    std::fill(dimmed_.begin(), dimmed_.end(), 0);
    enforceInvariants();
    reseedLayout();
}

void DiagramSession::applyPreset(Preset preset) {
    resetForPreset(preset);
    reseedLayout();
}

void DiagramSession::resetForPreset(Preset preset) {
    std::fill(expanded_.begin(), expanded_.end(), 0);
    std::fill(removed_.begin(), removed_.end(), 0);
    std::fill(dimmed_.begin(), dimmed_.end(), 0);
    relations_ = defaultRelationVisibility();
    for (NodeIndex i = 0; i < graph_->size(); ++i) {
        if (graph_->children(i).empty()) continue;
        const auto kind = graph_->entity(i).kind;
        switch (preset) {
        case Preset::Default:
        case Preset::ProjectDependencies: expanded_[i] = kind == EntityKind::Solution; break;
        case Preset::AllTypes: expanded_[i] = isStructuralKind(kind); break;
        case Preset::BirdsEye: expanded_[i] = kind != EntityKind::Method; break;
        }
    }
    if (preset == Preset::ProjectDependencies) {
        relations_.fill(false);
        relations_[static_cast<std::size_t>(RelationName::DependsOn)] = true;
    }
    preset_ = preset;
    enforceInvariants();
}

void DiagramSession::select(std::optional<NodeIndex> node) {
    if (node) requireVisible(*node);
    selection_ = node;
}

void DiagramSession::move(NodeIndex node, Vec2 position, bool pin) {
    requireVisible(node);
    layout_ = applyUserMove(std::move(layout_), node, position, pin);
    runLayout();
}

void DiagramSession::setRelationVisibility(RelationName relation, bool visible) {
    relations_[static_cast<std::size_t>(relation)] = visible;
}

void DiagramSession::setConfig(EngineConfig config) { config_ = std::move(config); }

std::vector<NodeIndex> DiagramSession::applyFilter(const FilterQuery& query, FilterApplication mode) {
    const auto eligible = eligibleNodes();
    auto matched = evaluateQuery(*graph_, eligible, query);
    applyFilterMode(matched, mode);
    return matched;
}

void DiagramSession::applyFilterMode(std::span<const NodeIndex> matched, FilterApplication mode) {
    std::vector<std::uint8_t> hit(graph_->size(), 0);
    for (auto n : matched) {
        if (n < hit.size()) hit[n] = 1;
    }
    if (mode == FilterApplication::Highlight) {
        for (NodeIndex i = 0; i < graph_->size(); ++i) dimmed_[i] = visible_[i] && !hit[i] ? 1 : 0;
        return;
    }
    bool changed = false;
    for (NodeIndex i = 0; i < graph_->size(); ++i) {
        if (visible_[i] && !hit[i]) {
            removed_[i] = 1;
            changed = true;
        }
    }
    if (!changed) return;
    enforceInvariants();
    relayoutIncremental();
}

void DiagramSession::clearHighlight() { std::fill(dimmed_.begin(), dimmed_.end(), 0); }

GlyphSpec DiagramSession::glyph(NodeIndex node) const {
    return computeGlyph(*graph_, node, config_.glyph, GlyphViewState{!expanded_.at(node)});
}

} // namespace helgraph
