#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tsloss {

enum class ErrorKind {
    InvalidArgument,
    NotAGridPoint,
    NotRegressive,
    NotAGridOffset,
    NotRegressiveEquation,
    OscillatoryUnsupported,
    DegenerateLeadingCoefficient,
    NonCommensurateHorizon,
    SingularBoundarySystem,
    ScaleMismatch,
    SingularSystem,
    ParseError,
    GapError,
    RangeError,
};

constexpr std::string_view error_name(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotAGridPoint: return "NotAGridPoint";
    case ErrorKind::NotRegressive: return "NotRegressive";
    case ErrorKind::NotAGridOffset: return "NotAGridOffset";
    case ErrorKind::NotRegressiveEquation: return "NotRegressiveEquation";
    case ErrorKind::OscillatoryUnsupported: return "OscillatoryUnsupported";
    case ErrorKind::DegenerateLeadingCoefficient: return "DegenerateLeadingCoefficient";
    case ErrorKind::NonCommensurateHorizon: return "NonCommensurateHorizon";
    case ErrorKind::SingularBoundarySystem: return "SingularBoundarySystem";
    case ErrorKind::ScaleMismatch: return "ScaleMismatch";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::GapError: return "GapError";
    case ErrorKind::RangeError: return "RangeError";
    }
    return "Unknown";
}

/// Every failure raised by the library. `kind()` identifies the failure
/// class; `what()` is "<KindName>: <detail>".
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail)
        : std::runtime_error(std::string(error_name(kind)) + ": " + detail), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }
    std::string_view name() const noexcept { return error_name(kind_); }

private:
    ErrorKind kind_;
};

} // namespace tsloss
