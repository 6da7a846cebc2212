#include "helgraph/layout.hpp"

#include <algorithm>
#include <numbers>

namespace helgraph {

const TreeSlot& TidyTreeResult::slot(NodeIndex node) const {
    auto it = std::lower_bound(slots.begin(), slots.end(), node,
                               [](const TreeSlot& s, NodeIndex n) { return s.node < n; });
    if (it == slots.end() || it->node != node) {
        throw Error(ErrorCode::UnknownId, "node is not part of the tree layout");
    }
    return *it;
}

TidyTreeResult tidyTreeLayout(const EntityGraph& graph, std::span<const NodeIndex> visible,
                              const TidyTreeConfig& config) {
    const auto n = graph.size();
    std::vector<std::uint32_t> slotOf(n, UINT32_MAX);
    std::vector<NodeIndex> nodes(visible.begin(), visible.end());
    std::sort(nodes.begin(), nodes.end());
    for (std::uint32_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i] >= n) throw Error(ErrorCode::NotATreeSlice, "visible set names an unknown node");
        if (i > 0 && nodes[i] == nodes[i - 1]) {
            throw Error(ErrorCode::NotATreeSlice, "visible set contains a duplicate");
        }
        slotOf[nodes[i]] = i;
    }

    TidyTreeResult result;
    result.slots.resize(nodes.size());
    std::vector<std::vector<std::uint32_t>> kids(nodes.size());
    std::vector<std::uint32_t> roots;
    for (std::uint32_t i = 0; i < nodes.size(); ++i) {
        auto& s = result.slots[i];
        s.node = nodes[i];
        auto p = graph.parent(nodes[i]);
        while (p != kNoNode && slotOf[p] == UINT32_MAX) p = graph.parent(p);
        s.sliceParent = p;
        if (p == kNoNode) {
            roots.push_back(i);
        } else {
            kids[slotOf[p]].push_back(i); // i ascends, so children stay sorted by node
        }
    }

    // Pre-order per root; reversed it gives children before parents for leaf counts.
    std::vector<std::uint32_t> order;
    order.reserve(nodes.size());
    for (auto r : roots) {
        result.slots[r].root = nodes[r];
        std::vector<std::uint32_t> stack{r};
        while (!stack.empty()) {
            auto cur = stack.back();
            stack.pop_back();
            order.push_back(cur);
            for (auto it = kids[cur].rbegin(); it != kids[cur].rend(); ++it) {
                result.slots[*it].depth = result.slots[cur].depth + 1;
                result.slots[*it].root = result.slots[cur].root;
                stack.push_back(*it);
            }
        }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        auto& s = result.slots[*it];
        if (kids[*it].empty()) {
            s.leafCount = 1;
        } else {
            for (auto c : kids[*it]) s.leafCount += result.slots[c].leafCount;
        }
    }

    // Each tree gets a center; trees after the first are placed to the right of the
    // previous one's outermost ring.
    std::vector<std::uint32_t> maxDepth(nodes.size(), 0);
    for (const auto& s : result.slots) {
        auto r = slotOf[s.root];
        maxDepth[r] = std::max(maxDepth[r], s.depth);
    }
    double cursor = 0.0;
    for (std::size_t k = 0; k < roots.size(); ++k) {
        auto& root = result.slots[roots[k]];
        const double extent = maxDepth[roots[k]] * config.ringGap;
        if (k > 0) cursor += extent + config.ringGap;
        root.center = {cursor, 0.0};
        root.spanStart = 0.0;
        root.spanEnd = 2.0 * std::numbers::pi;
        cursor += extent;
    }

    for (auto i : order) {
        auto& s = result.slots[i];
        if (s.sliceParent != kNoNode) {
            s.center = result.slots[slotOf[s.root]].center;
            const double angle = 0.5 * (s.spanStart + s.spanEnd);
            const double radius = config.ringGap * s.depth;
            s.position = {s.center.x + radius * std::cos(angle), s.center.y + radius * std::sin(angle)};
        } else {
            s.position = s.center;
        }
        double start = s.spanStart;
        const double width = s.spanEnd - s.spanStart;
        for (std::size_t c = 0; c < kids[i].size(); ++c) {
            auto& child = result.slots[kids[i][c]];
            child.spanStart = start;
            child.spanEnd = (c + 1 == kids[i].size())
                                ? s.spanEnd
                                : start + width * child.leafCount / s.leafCount;
            start = child.spanEnd;
        }
    }
    return result;
}

} // namespace helgraph
