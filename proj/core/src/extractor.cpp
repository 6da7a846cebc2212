#include "helgraph/extractor.hpp"
#include "helgraph/interchange.hpp"

#include <array>
#include <cstdio>
#include <memory>

#include <sys/wait.h>

namespace helgraph {
namespace {

std::string shellQuote(const std::string& text) {
    std::string out = "'";
    for (char c : text) {
        if (c == '\'') {
            out += "'\\''";
        } else {
            out += c;
        }
    }
    return out + "'";
}

} // namespace

std::string captureExtractorOutput(const std::filesystem::path& extractor,
                                   const std::filesystem::path& sourcePath) {
    const auto command = shellQuote(extractor.string()) + " " + shellQuote(sourcePath.string());
    FILE* pipe = ::popen(command.c_str(), "r");
    if (pipe == nullptr) {
        throw Error(ErrorCode::ExtractionFailure, "cannot start extractor " + extractor.string());
    }
    std::string output;
    std::array<char, 8192> buffer{};
    std::size_t n = 0;
    while ((n = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0) output.append(buffer.data(), n);
    const int status = ::pclose(pipe);
    if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) != 0) {
        const int code = (status != -1 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
        throw Error(ErrorCode::ExtractionFailure,
                    extractor.string() + " exited with status " + std::to_string(code));
    }
    return output;
}

EntityGraph runExtractor(const std::filesystem::path& extractor,
                         const std::filesystem::path& sourcePath) {
    return parseInterchange(captureExtractorOutput(extractor, sourcePath));
}

} // namespace helgraph
