#include "helgraph/interchange.hpp"
#include "helgraph/synthetic.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

namespace helgraph {
namespace {

using namespace testing;
using nlohmann::json;

const std::filesystem::path kData = HELGRAPH_TEST_DATA_DIR;

ErrorCode parseError(const std::string& text) {
    try {
        parseInterchange(text);
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "parse succeeded";
    return ErrorCode::IoFailure;
}

json minimalDoc() {
    return json{{"formatVersion", "1.0"},
                {"entities", json::array({json{{"id", "S"}, {"name", "S"}, {"kind", "solution"}}})},
                {"relations", json::object()}};
}

TEST(Interchange, CanonicalFormIsStable) {
    const auto canonical = readFile(kData / "unordered.canonical.helgraph.json");
    const auto graph = readInterchangeFile(kData / "unordered.helgraph.json");
    EXPECT_EQ(writeInterchange(graph), canonical);
    EXPECT_EQ(writeInterchange(parseInterchange(canonical)), canonical);
}

TEST(Interchange, ParsedFieldsSurvive) {
    const auto graph = readInterchangeFile(kData / "unordered.helgraph.json");
    EXPECT_EQ(graph.metadata().label, "acme");
    const auto& widget = graph.entity(graph.indexOf("Acme.Core.Widget"));
    EXPECT_TRUE(widget.isRecord);
    EXPECT_TRUE(widget.modifiers.isSealed);
    EXPECT_EQ(widget.accessibility, Accessibility::Internal);
    ASSERT_EQ(widget.diagnostics.size(), 1u);
    EXPECT_EQ(widget.diagnostics[0].code, "W42");
    const auto& thing = graph.entity(graph.indexOf("Acme.Core.IThing"));
    ASSERT_TRUE(thing.comment);
    EXPECT_EQ(thing.comment->summary, "A thing.");
    EXPECT_FALSE(thing.comment->remarks);
}

TEST(Interchange, SyntheticRoundTripIsByteExact) {
    SyntheticParams params;
    params.seed = 17;
    params.projectCount = 3;
    const auto graph = generateSynthetic(params);
    const auto bytes = writeInterchange(graph);
    const auto again = parseInterchange(bytes);
    EXPECT_EQ(again, graph);
    EXPECT_EQ(writeInterchange(again), bytes);
}

TEST(Interchange, OutputEndsWithNewlineAndHasNoBom) {
    const auto bytes = writeInterchange(parseInterchange(minimalDoc().dump()));
    ASSERT_FALSE(bytes.empty());
    EXPECT_EQ(bytes.back(), '\n');
    EXPECT_NE(static_cast<unsigned char>(bytes[0]), 0xEF);
}

TEST(Interchange, MissingRelationsObjectIsAccepted) {
    auto doc = minimalDoc();
    doc.erase("relations");
    EXPECT_EQ(parseInterchange(doc.dump()).size(), 1u);
}

TEST(Interchange, RejectsWrongVersion) {
    auto doc = minimalDoc();
    doc["formatVersion"] = "2.0";
    EXPECT_EQ(parseError(doc.dump()), ErrorCode::UnsupportedVersion);
}

TEST(Interchange, RejectsMalformedInput) {
    EXPECT_EQ(parseError("{not json"), ErrorCode::MalformedDocument);
    EXPECT_EQ(parseError("[]"), ErrorCode::MalformedDocument);
    auto doc = minimalDoc();
    doc.erase("formatVersion");
    EXPECT_EQ(parseError(doc.dump()), ErrorCode::MalformedDocument);

    doc = minimalDoc();
    doc["entities"][0]["kind"] = "module";
    EXPECT_EQ(parseError(doc.dump()), ErrorCode::MalformedDocument);

    doc = minimalDoc();
    doc["entities"][0].erase("name");
    EXPECT_EQ(parseError(doc.dump()), ErrorCode::MalformedDocument);

    doc = minimalDoc();
    doc["relations"]["imports"] = json::array();
    EXPECT_EQ(parseError(doc.dump()), ErrorCode::MalformedDocument);

    doc = minimalDoc();
    doc["relations"]["declares"] = json::array({json::array({"S"})});
    EXPECT_EQ(parseError(doc.dump()), ErrorCode::MalformedDocument);
}

TEST(Interchange, GraphErrorsCarryTheirCode) {
    auto doc = minimalDoc();
    doc["relations"]["declares"] = json::array({json::array({"S", "ghost"})});
    EXPECT_EQ(parseError(doc.dump()), ErrorCode::DanglingEdge);

    doc = minimalDoc();
    doc["entities"].push_back(doc["entities"][0]);
    try {
        parseInterchange(doc.dump());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DuplicateId);
        EXPECT_NE(std::string(e.what()).find("S"), std::string::npos);
    }
}

TEST(Interchange, FileHelpers) {
    TempDir dir("interchange");
    const auto graph = readInterchangeFile(kData / "unordered.helgraph.json");
    const auto path = dir.path() / "out.helgraph.json";
    writeInterchangeFile(graph, path);
    EXPECT_EQ(readInterchangeFile(path), graph);
    try {
        readInterchangeFile(dir.path() / "missing.json");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::IoFailure);
    }
}

} // namespace
} // namespace helgraph
