#include "helgraph/session_api.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <thread>

namespace helgraph {
namespace {

using namespace testing;
using nlohmann::json;

std::shared_ptr<const EntityGraph> sample() {
    return std::make_shared<const EntityGraph>(buildGraph(
        {entity("sln", EntityKind::Solution), entity("P1", EntityKind::Project), entity("P2", EntityKind::Project),
         entity("N1", EntityKind::Namespace), type("T1", TypeKind::Class)},
        {declares({{"sln", "P1"}, {"sln", "P2"}, {"P1", "N1"}, {"N1", "T1"}}),
         relation(RelationName::DependsOn, {{"P1", "P2"}})},
        GraphMetadata{"sample", "1.0"}));
}

class SessionApiTest : public ::testing::Test {
protected:
    SessionApiTest() {
        EngineConfig config;
        config.force.maxIterations = 30;
        api = std::make_unique<SessionApi>(sample(), config);
    }

    json call(const std::string& method, const std::string& path, const json& body = nullptr,
              int expectStatus = 200) {
        ApiRequest r{method, path, {}, body.is_null() ? "" : body.dump()};
        auto response = api->handle(r);
        EXPECT_EQ(response.status, expectStatus) << method << " " << path << " -> " << response.body;
        EXPECT_EQ(response.contentType, "application/json");
        return json::parse(response.body);
    }

    std::unique_ptr<SessionApi> api;
};

TEST_F(SessionApiTest, Meta) {
    auto j = call("GET", "/graph/meta");
    EXPECT_EQ(j["label"], "sample");
    EXPECT_EQ(j["entityCount"], 5);
    EXPECT_EQ(j["relationCounts"]["declares"], 4);
    EXPECT_EQ(j["roots"], json::array({"sln"}));
    EXPECT_EQ(j["session"]["visible"], json::array({"P1", "P2", "sln"}));
}

TEST_F(SessionApiTest, ExpandCollapseRemoveRefresh) {
    auto j = call("POST", "/session/expand", {{"id", "P1"}});
    EXPECT_EQ(j["visible"], json::array({"N1", "P1", "P2", "sln"}));
    EXPECT_EQ(j["layoutRuns"], 2);
    j = call("POST", "/session/collapse", {{"id", "P1"}});
    EXPECT_EQ(j["visible"].size(), 3u);
    j = call("POST", "/session/remove", {{"id", "P2"}});
    EXPECT_EQ(j["removed"], json::array({"P2"}));
    j = call("POST", "/session/refresh", {{"relationVisibility", {{"typeOf", true}}}});
    EXPECT_TRUE(j["removed"].empty());
    EXPECT_EQ(j["relationVisibility"]["typeOf"], true);
}

TEST_F(SessionApiTest, PresetMoveSelect) {
    auto j = call("POST", "/session/preset", {{"name", "allTypes"}});
    EXPECT_EQ(j["preset"], "allTypes");
    EXPECT_EQ(j["visible"].size(), 5u);
    j = call("POST", "/session/move", {{"id", "T1"}, {"x", 12.5}, {"y", -3}});
    auto layout = call("GET", "/layout");
    EXPECT_EQ(layout["positions"]["T1"], json::array({12.5, -3.0}));
    EXPECT_EQ(layout["running"], false);
    j = call("POST", "/session/select", {{"id", "T1"}});
    EXPECT_EQ(j["selection"], "T1");
    j = call("POST", "/session/select", {{"id", nullptr}});
    EXPECT_TRUE(j["selection"].is_null());
}

TEST_F(SessionApiTest, ErrorsMapToStatuses) {
    auto j = call("POST", "/session/expand", {{"id", "ghost"}}, 404);
    EXPECT_EQ(j["error"]["code"], "UnknownId");
    call("POST", "/session/expand", {{"id", "N1"}}, 409);
    call("POST", "/session/collapse", {{"id", "P1"}}, 409);
    call("POST", "/session/preset", {{"name", "nope"}}, 400);
    call("POST", "/session/expand", json::object(), 400);
    call("POST", "/filter", {{"query", {{"mode", "regex"}, {"text", "("}}}}, 400);
    call("GET", "/nowhere", nullptr, 404);
    call("POST", "/graph/meta", nullptr, 405);
    call("GET", "/session/expand", nullptr, 405);
    ApiRequest broken{"POST", "/session/expand", {}, "{oops"};
    EXPECT_EQ(api->handle(broken).status, 400);
}

TEST_F(SessionApiTest, Filter) {
    auto j = call("POST", "/filter", {{"query", {{"mode", "fullText"}, {"text", "p1"}}}});
    EXPECT_EQ(j["matched"], json::array({"P1"}));
    EXPECT_EQ(j["session"]["dimmed"], json::array({"P2", "sln"}));
    j = call("POST", "/filter", {{"query", nullptr}});
    EXPECT_TRUE(j["session"]["dimmed"].empty());
    j = call("POST", "/filter", {{"query", {{"mode", "fullText"}, {"text", "p"}}}, {"mode", "isolate"}});
    EXPECT_EQ(j["session"]["visible"], json::array({"P1", "P2"}));
}

TEST_F(SessionApiTest, NodeAndGlyphs) {
    auto j = call("GET", "/node/T1");
    EXPECT_EQ(j["declaration"], "public class T1");
    EXPECT_EQ(j["visible"], false);
    j = call("GET", "/glyphs");
    EXPECT_EQ(j.size(), 3u);
    EXPECT_TRUE(j.contains("P1"));
    ApiRequest r{"GET", "/glyphs", {{"ids", "T1,N1"}}, ""};
    j = json::parse(api->handle(r).body);
    EXPECT_EQ(j.size(), 2u);
    EXPECT_EQ(j["T1"]["iconId"], "class");
}

TEST_F(SessionApiTest, Config) {
    auto j = call("GET", "/config");
    EXPECT_EQ(j["scalingMode"], "sqrt");
    j = call("PUT", "/config", {{"scalingMode", "linear"}, {"snapshotRate", 5}});
    EXPECT_EQ(j["scalingMode"], "linear");
    EXPECT_DOUBLE_EQ(api->snapshotRate(), 5.0);
    call("PUT", "/config", {{"unknown", 1}}, 400);
}

TEST_F(SessionApiTest, EveryStateChangePublishesAFinalFrame) {
    const auto before = api->hub().latest()->version;
    call("POST", "/session/expand", {{"id", "P1"}});
    auto frame = api->hub().latest();
    EXPECT_GT(frame->version, before);
    EXPECT_FALSE(frame->running);
    auto j = json::parse(frame->json);
    EXPECT_EQ(j["positions"].size(), 4u);
}

TEST(SnapshotHub, WaitNewerWakesOnPublish) {
    SnapshotHub hub;
    EXPECT_FALSE(hub.latest());
    EXPECT_FALSE(hub.waitNewer(0, std::chrono::milliseconds(10)));
    std::thread writer([&] {
        std::this_thread::sleep_for(std::chrono::milliseconds(20));
        LayoutSnapshot s;
        s.version = 1;
        hub.publish(s);
    });
    auto got = hub.waitNewer(0, std::chrono::seconds(5));
    writer.join();
    ASSERT_TRUE(got);
    EXPECT_EQ(got->version, 1u);
    hub.close();
    EXPECT_TRUE(hub.closed());
    EXPECT_FALSE(hub.waitNewer(1, std::chrono::seconds(5)));
}

TEST(SessionApiStatus, Mapping) {
    EXPECT_EQ(httpStatus(ErrorCode::UnknownId), 404);
    EXPECT_EQ(httpStatus(ErrorCode::NotVisible), 409);
    EXPECT_EQ(httpStatus(ErrorCode::InvalidRegex), 400);
    EXPECT_EQ(httpStatus(ErrorCode::IoFailure), 500);
}

} // namespace
} // namespace helgraph
