#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace helgraph {

enum class ErrorCode {
    // graph construction
    DuplicateId,
    DanglingEdge,
    DeclaresCycle,
    MultipleParents,
    MissingParent,
    IllegalModifierCombination,
    KindMismatch,
    DependsOnCycle,
    // queries
    UnknownId,
    NotAType,
    // interchange / ingestion
    MalformedDocument,
    UnsupportedVersion,
    InvalidParams,
    ExtractionFailure,
    // filters
    InvalidRegex,
    UnknownProperty,
    OperatorTypeMismatch,
    EmptyBuilderQuery,
    // layout
    NotATreeSlice,
    // session
    NotVisible,
    NoChildren,
    NotExpanded,
    UnknownPreset,
    IoFailure,
};

std::string_view toString(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(toString(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace helgraph
