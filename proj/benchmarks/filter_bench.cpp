#include "helgraph/filter.hpp"
#include "helgraph/synthetic.hpp"

#include <benchmark/benchmark.h>
#include <nlohmann/json.hpp>

#include <numeric>

namespace {

using namespace helgraph;

const EntityGraph& graph() {
    static const EntityGraph g = [] {
        SyntheticParams params;
        params.typesPerNamespace = 12;
        return generateSynthetic(params);
    }();
    return g;
}

std::vector<NodeIndex> everything() {
    std::vector<NodeIndex> all(graph().size());
    std::iota(all.begin(), all.end(), 0);
    return all;
}

void run(benchmark::State& state, const FilterQuery& query) {
    const auto eligible = everything();
    for (auto _ : state) benchmark::DoNotOptimize(evaluateQuery(graph(), eligible, query));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(eligible.size()));
}

void BM_FullText(benchmark::State& state) { run(state, FilterQuery::fullText("service")); }
BENCHMARK(BM_FullText);

void BM_Regex(benchmark::State& state) { run(state, FilterQuery::regex("^Get[A-Z]")); }
BENCHMARK(BM_Regex);

void BM_Builder(benchmark::State& state) {
    run(state, parseQuery(nlohmann::json::parse(R"({"mode":"builder","clauses":[
        {"property":"kind","operator":"oneOf","value":["method","property"]},
        {"property":"isStatic","operator":"is","value":false},
        {"property":"namespacePath","operator":"contains","value":"Core"}]})")));
}
BENCHMARK(BM_Builder);

} // namespace
