#pragma once

#include "helgraph/entity_graph.hpp"

#include <cstdint>
#include <string>

namespace helgraph {

struct SyntheticParams {
    std::uint64_t seed = 1;
    int projectCount = 8;
    int namespaceDepth = 2;
    int typesPerNamespace = 4;
    int membersPerType = 6;
    double diagnosticRate = 0.02;
    std::string label = "synthetic";
};

/// Throws InvalidParams when a count is < 1 or the rate lies outside [0, 1].
void checkParams(const SyntheticParams& params);

/// Codebase-shaped graph: one solution, params.projectCount projects (no packages),
/// namespace trees up to namespaceDepth, types with members and method parameters, plus
/// inheritsFrom/typeOf/returns/references/dependsOn edges. Deterministic in the seed on
/// every platform.
EntityGraph generateSynthetic(const SyntheticParams& params);

} // namespace helgraph
