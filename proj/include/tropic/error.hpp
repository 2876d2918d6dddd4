#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tropic {

/// Named failure kinds. The CLI prints these names verbatim.
enum class ErrorKind {
    InvalidArgument,
    ParseError,
    Divergent,
    ShapeMismatch,
    SpecMismatch,
    DivergentClosure,
    NotConverged,
    ResidualMismatch,
    EmptyDomain,
    GridMismatch,
    StepMismatch,
    NonpositiveArgument,
    ZeroValue,
    DimensionUnsupported,
    DimMismatch,
    LawViolation,
    LinearityViolation,
    StabilityViolation,
    NonpositiveU,
    DegenerateScales,
    NonmonotoneMeasure,
    DegenerateCurve,
    EmptyWindow,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace tropic
