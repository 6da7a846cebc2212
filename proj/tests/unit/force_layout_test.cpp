#include "helgraph/layout.hpp"

#include "fixtures.hpp"
#include "random_graphs.hpp"

#include <gtest/gtest.h>

#include <numeric>

namespace helgraph {
namespace {

using namespace testing;

std::array<bool, kRelationCount> onlyDeclares() {
    std::array<bool, kRelationCount> on{};
    on[static_cast<std::size_t>(RelationName::Declares)] = true;
    return on;
}

LayoutState seeded(const EntityGraph& g) {
    std::vector<NodeIndex> all(g.size());
    std::iota(all.begin(), all.end(), 0);
    return LayoutState::fromTree(tidyTreeLayout(g, all));
}

EntityGraph tree(std::uint64_t seed, std::size_t n) {
    std::mt19937_64 rng(seed);
    return build(randomTree(rng, n));
}

TEST(ForceLayout, FromTreeCopiesPositions) {
    auto g = tree(1, 20);
    std::vector<NodeIndex> all(g.size());
    std::iota(all.begin(), all.end(), 0);
    auto t = tidyTreeLayout(g, all);
    auto s = LayoutState::fromTree(t);
    ASSERT_EQ(s.size(), g.size());
    for (auto node : all) EXPECT_EQ(s.position(node), t.slot(node).position);
    EXPECT_FALSE(s.converged);
    EXPECT_EQ(s.iteration, 0u);
}

TEST(ForceLayout, CollectEdgesHonoursRelationsAndPresence) {
    auto g = tree(2, 30);
    auto s = seeded(g);
    EXPECT_EQ(collectLayoutEdges(g, s, onlyDeclares()).size(), g.size() - 1);
    std::array<bool, kRelationCount> none{};
    EXPECT_TRUE(collectLayoutEdges(g, s, none).empty());
}

TEST(ForceLayout, StepIsDeterministic) {
    auto g = tree(3, 60);
    auto s = seeded(g);
    auto edges = collectLayoutEdges(g, s, onlyDeclares());
    ForceConfig config;
    auto a = forceStep(s, edges, config);
    auto b = forceStep(s, edges, config);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.iteration, 1u);
    EXPECT_NE(a.positions, s.positions);
}

TEST(ForceLayout, CoincidentNodesSeparate) {
    auto g = buildGraph({entity("S", EntityKind::Solution), entity("T", EntityKind::Solution)}, {});
    LayoutState s;
    s.nodes = {0, 1};
    s.positions = {{5, 5}, {5, 5}};
    s.previousForces.assign(2, {});
    s.pinned.assign(2, 0);
    auto next = forceStep(s, {}, ForceConfig{});
    EXPECT_NE(next.positions[0], next.positions[1]);
    for (auto p : next.positions) EXPECT_TRUE(std::isfinite(p.x) && std::isfinite(p.y));
}

TEST(ForceLayout, PinnedNodesStay) {
    auto g = tree(4, 40);
    auto s = seeded(g);
    const NodeIndex pinned = 3;
    s = applyUserMove(std::move(s), pinned, {321, -17}, true);
    auto edges = collectLayoutEdges(g, s, onlyDeclares());
    s = runAutoLayout(std::move(s), edges, ForceConfig{});
    EXPECT_EQ(s.position(pinned), (Vec2{321, -17}));
    EXPECT_TRUE(s.isPinned(pinned));
    s = applyUserMove(std::move(s), pinned, {0, 0}, false);
    EXPECT_FALSE(s.isPinned(pinned));
    EXPECT_THROW(applyUserMove(s, 10'000, {}, true), Error);
}

TEST(ForceLayout, ConvergesOnSmallTree) {
    auto g = tree(5, 100);
    auto s = seeded(g);
    auto edges = collectLayoutEdges(g, s, onlyDeclares());
    std::size_t frames = 0;
    s = runAutoLayout(std::move(s), edges, ForceConfig{}, [&](const LayoutState&) { ++frames; });
    EXPECT_TRUE(s.converged);
    EXPECT_LT(s.meanTraction, 1.0);
    EXPECT_EQ(frames, s.iteration);
    EXPECT_LE(s.iteration, 1000u);
}

TEST(ForceLayout, MaxIterationsBoundsTheRun) {
    auto g = tree(6, 100);
    auto s = seeded(g);
    auto edges = collectLayoutEdges(g, s, onlyDeclares());
    ForceConfig config;
    config.tractionThreshold = 0.0;
    config.maxIterations = 7;
    s = runAutoLayout(std::move(s), edges, config);
    EXPECT_FALSE(s.converged);
    EXPECT_EQ(s.iteration, 7u);
}

TEST(ForceLayout, BarnesHutStaysCloseToExact) {
    auto g = tree(7, 400);
    auto s = seeded(g);
    auto edges = collectLayoutEdges(g, s, onlyDeclares());
    ForceConfig exact;
    ForceConfig approx;
    approx.barnesHutCutover = 10;
    approx.barnesHutTheta = 0.5;
    auto a = forceStep(s, edges, exact);
    auto b = forceStep(s, edges, approx);
    double err = 0, norm = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        err += (a.previousForces[i] - b.previousForces[i]).norm();
        norm += a.previousForces[i].norm();
    }
    EXPECT_LT(err / norm, 0.05);
}

TEST(ForceLayout, ReconcileKeepsSurvivorsAndPlacesNewcomersNearAncestors) {
    auto g = buildGraph({entity("S", EntityKind::Solution), entity("P", EntityKind::Project),
                         entity("N", EntityKind::Namespace), entity("Q", EntityKind::Project)},
                        {declares({{"S", "P"}, {"P", "N"}, {"S", "Q"}})});
    const auto S = g.indexOf("S"), P = g.indexOf("P"), N = g.indexOf("N"), Q = g.indexOf("Q");
    LayoutState prev;
    prev.nodes = {P, S};
    std::sort(prev.nodes.begin(), prev.nodes.end());
    prev.positions.resize(2);
    prev.positions[*prev.slot(S)] = {0, 0};
    prev.positions[*prev.slot(P)] = {100, 50};
    prev.previousForces.assign(2, {});
    prev.pinned.assign(2, 0);
    prev.pinned[*prev.slot(P)] = 1;

    std::vector<NodeIndex> visible{S, P, N, Q};
    auto next = reconcileLayout(prev, g, visible, 9, 10.0);
    EXPECT_EQ(next.position(P), (Vec2{100, 50}));
    EXPECT_TRUE(next.isPinned(P));
    EXPECT_NEAR((next.position(N) - Vec2{100, 50}).norm(), 10.0, 1e-9);
    EXPECT_NEAR(next.position(Q).norm(), 10.0, 1e-9);
    EXPECT_EQ(next, reconcileLayout(prev, g, visible, 9, 10.0));

    std::vector<NodeIndex> fewer{S};
    auto shrunk = reconcileLayout(prev, g, fewer, 9, 10.0);
    EXPECT_EQ(shrunk.size(), 1u);
    EXPECT_FALSE(shrunk.slot(P));
}

} // namespace
} // namespace helgraph
