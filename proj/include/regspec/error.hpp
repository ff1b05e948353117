#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace regspec {

enum class ErrorKind {
    OutOfRange,
    SelfLoop,
    ParseError,
    IoError,
    InvalidParams,
    GenerationFailed,
    ConvergenceFailure,
    IndexOutOfRange,
    ResourceLimit,
    OracleCapExceeded,
    CensusCapExceeded,
    NotRegular,
    DomainError,
    ScanCapExceeded,
};

constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::SelfLoop: return "SelfLoop";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::GenerationFailed: return "GenerationFailed";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::OracleCapExceeded: return "OracleCapExceeded";
    case ErrorKind::CensusCapExceeded: return "CensusCapExceeded";
    case ErrorKind::NotRegular: return "NotRegular";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::ScanCapExceeded: return "ScanCapExceeded";
    }
    return "Unknown";
}

// Every failure raised by the library carries a kind so callers (and the CLI's
// exit-code mapping) can dispatch without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace regspec
