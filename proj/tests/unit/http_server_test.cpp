#include "helgraph/http_server.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include <thread>

namespace helgraph {
namespace {

using namespace testing;
using nlohmann::json;

class HttpServerTest : public ::testing::Test {
protected:
    void SetUp() override {
        auto graph = std::make_shared<const EntityGraph>(
            buildGraph({entity("sln", EntityKind::Solution), entity("P", EntityKind::Project),
                        entity("N", EntityKind::Namespace)},
                       {declares({{"sln", "P"}, {"P", "N"}})}));
        EngineConfig config;
        config.force.maxIterations = 50;
        server = std::make_unique<HttpServer>(std::make_shared<SessionApi>(graph, config), ServerOptions{"127.0.0.1", 0});
        port = server->bind();
        thread = std::thread([this] { server->listen(); });
        client = std::make_unique<httplib::Client>("127.0.0.1", port);
        client->set_read_timeout(10, 0);
    }

    void TearDown() override {
        server->stop();
        thread.join();
    }

    std::unique_ptr<HttpServer> server;
    std::unique_ptr<httplib::Client> client;
    std::thread thread;
    int port = 0;
};

TEST_F(HttpServerTest, BindsAnEphemeralPort) {
    EXPECT_GT(port, 0);
    EXPECT_EQ(server->port(), port);
}

TEST_F(HttpServerTest, ServesApiRoutes) {
    auto res = client->Get("/graph/meta");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 200);
    EXPECT_EQ(json::parse(res->body)["entityCount"], 3);

    res = client->Post("/session/expand", R"({"id":"P"})", "application/json");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 200);
    EXPECT_EQ(json::parse(res->body)["visible"].size(), 3u);

    res = client->Get("/node/N");
    ASSERT_TRUE(res);
    EXPECT_EQ(json::parse(res->body)["declaration"], "namespace N");

    res = client->Put("/config", R"({"scalingMode":"log"})", "application/json");
    ASSERT_TRUE(res);
    EXPECT_EQ(json::parse(res->body)["scalingMode"], "log");
}

TEST_F(HttpServerTest, ErrorsAreJson) {
    auto res = client->Post("/session/expand", R"({"id":"nope"})", "application/json");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 404);
    EXPECT_EQ(json::parse(res->body)["error"]["code"], "UnknownId");

    res = client->Get("/no/such/route");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 404);
    EXPECT_TRUE(json::parse(res->body).contains("error"));
}

TEST_F(HttpServerTest, ServesViewer) {
    auto res = client->Get("/");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 200);
    EXPECT_NE(res->get_header_value("Content-Type").find("text/html"), std::string::npos);
    EXPECT_NE(res->body.find("<canvas"), std::string::npos);
    res = client->Get("/assets/viewer.js");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 200);
    res = client->Get("/core/helgraph-core.js");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 200);
}

TEST_F(HttpServerTest, LayoutStreamEndsWithFinalFrame) {
    std::thread trigger([&] {
        httplib::Client other("127.0.0.1", port);
        std::this_thread::sleep_for(std::chrono::milliseconds(50));
        other.Post("/session/expand", R"({"id":"P"})", "application/json");
    });
    std::string body;
    auto res = client->Get("/layout/stream", [&](const char* data, size_t n) {
        body.append(data, n);
        return true;
    });
    trigger.join();
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 200);
    EXPECT_EQ(res->get_header_value("Content-Type"), "text/event-stream");
    // The last data line is a finished frame.
    auto last = body.rfind("data: ");
    ASSERT_NE(last, std::string::npos);
    auto frame = json::parse(body.substr(last + 6, body.find("\n\n", last) - last - 6));
    EXPECT_EQ(frame["running"], false);
    EXPECT_TRUE(frame["positions"].contains("sln"));
}

} // namespace
} // namespace helgraph
