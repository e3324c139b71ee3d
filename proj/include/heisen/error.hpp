#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace heisen {

enum class ErrorKind {
    EmptyInterval,
    TouchesZero,
    OutsideBand,
    NonpositiveScale,
    MisalignedShift,
    GridMismatch,
    BandViolation,
    BadE,
    NotDilationCongruent,
    BadBounds,
    InvalidArgument,
    ParseError,
    IoError,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::EmptyInterval: return "EmptyInterval";
        case ErrorKind::TouchesZero: return "TouchesZero";
        case ErrorKind::OutsideBand: return "OutsideBand";
        case ErrorKind::NonpositiveScale: return "NonpositiveScale";
        case ErrorKind::MisalignedShift: return "MisalignedShift";
        case ErrorKind::GridMismatch: return "GridMismatch";
        case ErrorKind::BandViolation: return "BandViolation";
        case ErrorKind::BadE: return "BadE";
        case ErrorKind::NotDilationCongruent: return "NotDilationCongruent";
        case ErrorKind::BadBounds: return "BadBounds";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

/// Single exception type for the library; callers dispatch on kind().
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace heisen
