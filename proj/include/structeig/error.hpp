#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace structeig {

/// Failure categories raised by the library. Every throw site uses one of
/// these so callers (and the CLI) can branch on the category.
enum class ErrorCode {
    InvalidArgument,
    ShapeMismatch,
    DivisionByZero,
    SingularMatrix,
    NotHermitian,
    NoConvergence,
    BadBandwidth,
    OverlapError,
    TooSmall,
    SingularPencil,
    DegenerateQuadratic,
    SingularB,
    TooLargeForGeneralPath,
    SingularLeading,
    ZeroVector,
    ZeroScale,
    IndexOutOfRange,
    SingularDenominator,
    ParseError,
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::SingularMatrix: return "SingularMatrix";
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::BadBandwidth: return "BadBandwidth";
        case ErrorCode::OverlapError: return "OverlapError";
        case ErrorCode::TooSmall: return "TooSmall";
        case ErrorCode::SingularPencil: return "SingularPencil";
        case ErrorCode::DegenerateQuadratic: return "DegenerateQuadratic";
        case ErrorCode::SingularB: return "SingularB";
        case ErrorCode::TooLargeForGeneralPath: return "TooLargeForGeneralPath";
        case ErrorCode::SingularLeading: return "SingularLeading";
        case ErrorCode::ZeroVector: return "ZeroVector";
        case ErrorCode::ZeroScale: return "ZeroScale";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::SingularDenominator: return "SingularDenominator";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace structeig
