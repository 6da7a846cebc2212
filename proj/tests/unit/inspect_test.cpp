#include "helgraph/inspect.hpp"
#include "helgraph/session.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

namespace helgraph {
namespace {

using namespace testing;

std::shared_ptr<const EntityGraph> sample() {
    auto widget = type("Widget", TypeKind::Class);
    widget.modifiers.isSealed = true;
    widget.isRecord = true;
    auto base = type("Base", TypeKind::Class);
    base.modifiers.isAbstract = true;
    base.accessibility = Accessibility::ProtectedInternal;
    auto thing = type("IThing", TypeKind::Interface);
    auto run = member("Widget.Run", EntityKind::Method, true);
    run.name = "Run";
    run.accessibility = Accessibility::PrivateProtected;
    return std::make_shared<const EntityGraph>(buildGraph(
        {entity("App", EntityKind::Solution), entity("Core", EntityKind::Project),
         entity("Ns", EntityKind::Namespace), widget, base, thing, run},
        {declares({{"App", "Core"}, {"Core", "Ns"}, {"Ns", "Widget"}, {"Ns", "Base"}, {"Ns", "IThing"},
                   {"Widget", "Widget.Run"}}),
         relation(RelationName::InheritsFrom, {{"Widget", "IThing"}, {"Widget", "Base"}})}));
}

TEST(Inspect, DeclarationStrings) {
    auto g = sample();
    EXPECT_EQ(declarationString(*g, g->indexOf("App")), "App");
    EXPECT_EQ(declarationString(*g, g->indexOf("Core")), "project Core");
    EXPECT_EQ(declarationString(*g, g->indexOf("Widget")), "public sealed record class Widget : Base, IThing");
    EXPECT_EQ(declarationString(*g, g->indexOf("Base")), "protected internal abstract class Base");
    EXPECT_EQ(declarationString(*g, g->indexOf("Widget.Run")), "private protected static method Run");
}

TEST(Inspect, PayloadIncludesNeighbors) {
    auto g = sample();
    EngineConfig config;
    config.force.maxIterations = 5;
    DiagramSession session(g, config);
    auto p = inspectEntity(session, "Widget");
    EXPECT_FALSE(p.visible);
    EXPECT_EQ(p.entity.id, "Widget");
    const auto& inherits = p.neighbors[static_cast<std::size_t>(RelationName::InheritsFrom)];
    EXPECT_EQ(inherits.outgoing, (std::vector<std::string>{"Base", "IThing"}));
    const auto& decl = p.neighbors[static_cast<std::size_t>(RelationName::Declares)];
    EXPECT_EQ(decl.incoming, (std::vector<std::string>{"Ns"}));
    EXPECT_EQ(decl.outgoing, (std::vector<std::string>{"Widget.Run"}));
    EXPECT_TRUE(p.glyph.indicators.collapsedShadow);

    auto j = toJson(p);
    EXPECT_EQ(j["declaration"], p.declaration);
    EXPECT_EQ(j["neighbors"]["inheritsFrom"]["outgoing"].size(), 2u);
    EXPECT_EQ(j["visible"], false);
    EXPECT_EQ(j["entity"]["id"], "Widget");
    EXPECT_EQ(j["glyph"]["contour"], "octagonSolid");

    EXPECT_TRUE(inspectEntity(session, "Core").visible);
    EXPECT_THROW(inspectEntity(session, "Nope"), Error);
}

} // namespace
} // namespace helgraph
