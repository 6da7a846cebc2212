// helgraph command-line front end: analyze, generate, serve, export.
#include "helgraph/config.hpp"
#include "helgraph/extractor.hpp"
#include "helgraph/http_server.hpp"
#include "helgraph/interchange.hpp"
#include "helgraph/static_export.hpp"
#include "helgraph/synthetic.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <iostream>
#include <pthread.h>
#include <thread>

namespace fs = std::filesystem;
using namespace helgraph;

namespace {

int analyze(const fs::path& source, const fs::path& extractor, const fs::path& output) {
    const auto graph = runExtractor(extractor, source);
    writeInterchangeFile(graph, output);
    std::cout << "wrote " << output.string() << " (" << graph.size() << " entities)\n";
    return 0;
}

int generate(const SyntheticParams& params, const fs::path& output) {
    const auto graph = generateSynthetic(params);
    writeInterchangeFile(graph, output);
    std::cout << "wrote " << output.string() << " (" << graph.size() << " entities)\n";
    return 0;
}

std::optional<fs::path> optionalPath(const std::string& text) {
    if (text.empty()) return std::nullopt;
    return fs::path(text);
}

int serve(const fs::path& graphPath, const std::string& host, int port, const std::string& configPath) {
    auto graph = std::make_shared<const EntityGraph>(readInterchangeFile(graphPath));
    auto config = loadConfig(optionalPath(configPath));

    // Route SIGINT/SIGTERM to a waiter thread instead of an async handler.
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    auto api = std::make_shared<SessionApi>(std::move(graph), std::move(config));
    HttpServer server(api, ServerOptions{host, port});
    const int bound = server.bind();
    std::cout << "listening on http://" << host << ':' << bound << '/' << std::endl;

    std::thread waiter([&] {
        int received = 0;
        sigwait(&signals, &received);
        server.stop();
    });
    server.listen();
    // listen() also returns when the socket fails; wake the waiter either way.
    pthread_kill(waiter.native_handle(), SIGTERM);
    waiter.join();
    return 0;
}

int exportBundle(const fs::path& graphPath, const fs::path& output, const std::string& configPath) {
    const auto graph = readInterchangeFile(graphPath);
    const auto config = loadConfig(optionalPath(configPath));
    const auto files = exportStatic(graph, config, output);
    std::cout << "exported " << files.size() << " files to " << output.string() << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"helgraph: codebase diagrams from entity graphs"};
    app.require_subcommand(1);

    std::string source, extractor, output, graphPath, host = "127.0.0.1", configPath;
    int port = 8080;
    SyntheticParams params;

    auto* analyzeCmd = app.add_subcommand("analyze", "Run an extractor and store its interchange document");
    analyzeCmd->add_option("source", source, "Codebase path handed to the extractor")->required();
    analyzeCmd->add_option("--extractor", extractor, "Extractor executable")->required();
    analyzeCmd->add_option("-o,--output", output, "Output .helgraph.json")->required();

    auto* generateCmd = app.add_subcommand("generate", "Write a synthetic codebase graph");
    generateCmd->add_option("--seed", params.seed, "Random seed")->capture_default_str();
    generateCmd->add_option("--projects", params.projectCount, "Project count")->capture_default_str();
    generateCmd->add_option("--namespace-depth", params.namespaceDepth, "Namespace nesting depth")
        ->capture_default_str();
    generateCmd->add_option("--types", params.typesPerNamespace, "Types per namespace")->capture_default_str();
    generateCmd->add_option("--members", params.membersPerType, "Members per type")->capture_default_str();
    generateCmd->add_option("--diagnostic-rate", params.diagnosticRate, "Chance of a diagnostic per entity")
        ->capture_default_str();
    generateCmd->add_option("--label", params.label, "Graph label")->capture_default_str();
    generateCmd->add_option("-o,--output", output, "Output .helgraph.json")->required();

    auto* serveCmd = app.add_subcommand("serve", "Serve the session API and viewer");
    serveCmd->add_option("graph", graphPath, "Interchange document")->required()->check(CLI::ExistingFile);
    serveCmd->add_option("--host", host, "Bind address")->capture_default_str();
    serveCmd->add_option("--port", port, "Port; 0 picks a free one")->capture_default_str()->check(CLI::Range(0, 65535));
    serveCmd->add_option("--config", configPath, "Configuration file (HELGRAPH_CONFIG overrides it)");

    auto* exportCmd = app.add_subcommand("export", "Write a self-contained viewer bundle");
    exportCmd->add_option("graph", graphPath, "Interchange document")->required()->check(CLI::ExistingFile);
    exportCmd->add_option("-o,--output", output, "Output directory")->required();
    exportCmd->add_option("--config", configPath, "Configuration file (HELGRAPH_CONFIG overrides it)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyzeCmd) return analyze(source, extractor, output);
        if (*generateCmd) return generate(params, output);
        if (*serveCmd) return serve(graphPath, host, port, configPath);
        if (*exportCmd) return exportBundle(graphPath, output, configPath);
    } catch (const Error& e) {
        std::cerr << "helgraph: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "helgraph: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
