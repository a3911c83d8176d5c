#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace oswr {

enum class ErrorCode {
    NonElliptic,
    AsymmetricCoefficients,
    MissingDerivative,
    BadResolution,
    SingularSystem,
    DataMismatch,
    NodeOutOfRange,
    SnapFailure,
    ShapeMismatch,
    TooShort,
    ParseError,
    ValidationError,
    InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Library-wide exception; `code()` identifies the failure class.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::NonElliptic: return "NonElliptic";
    case ErrorCode::AsymmetricCoefficients: return "AsymmetricCoefficients";
    case ErrorCode::MissingDerivative: return "MissingDerivative";
    case ErrorCode::BadResolution: return "BadResolution";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::DataMismatch: return "DataMismatch";
    case ErrorCode::NodeOutOfRange: return "NodeOutOfRange";
    case ErrorCode::SnapFailure: return "SnapFailure";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

} // namespace oswr
