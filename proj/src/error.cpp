#include "tropic/error.hpp"

namespace tropic {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::Divergent: return "Divergent";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::SpecMismatch: return "SpecMismatch";
    case ErrorKind::DivergentClosure: return "DivergentClosure";
    case ErrorKind::NotConverged: return "NotConverged";
    case ErrorKind::ResidualMismatch: return "ResidualMismatch";
    case ErrorKind::EmptyDomain: return "EmptyDomain";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::StepMismatch: return "StepMismatch";
    case ErrorKind::NonpositiveArgument: return "NonpositiveArgument";
    case ErrorKind::ZeroValue: return "ZeroValue";
    case ErrorKind::DimensionUnsupported: return "DimensionUnsupported";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::LawViolation: return "LawViolation";
    case ErrorKind::LinearityViolation: return "LinearityViolation";
    case ErrorKind::StabilityViolation: return "StabilityViolation";
    case ErrorKind::NonpositiveU: return "NonpositiveU";
    case ErrorKind::DegenerateScales: return "DegenerateScales";
    case ErrorKind::NonmonotoneMeasure: return "NonmonotoneMeasure";
    case ErrorKind::DegenerateCurve: return "DegenerateCurve";
    case ErrorKind::EmptyWindow: return "EmptyWindow";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

} // namespace tropic
