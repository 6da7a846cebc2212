#pragma once

#include "helgraph/entity_graph.hpp"

#include <filesystem>
#include <string>

namespace helgraph {

/// Runs `<extractor> <sourcePath>`, captures standard output and parses it as an
/// interchange document. A nonzero exit status raises ExtractionFailure.
EntityGraph runExtractor(const std::filesystem::path& extractor,
                         const std::filesystem::path& sourcePath);

/// Raw stdout of the extractor; exposed for the CLI, which stores the canonical form.
std::string captureExtractorOutput(const std::filesystem::path& extractor,
                                   const std::filesystem::path& sourcePath);

} // namespace helgraph
