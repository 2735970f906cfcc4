#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace triadic {

/// Failure categories raised by the library. The CLI maps these onto exit codes.
enum class ErrorKind {
    InvalidArgument,
    InvalidLevel,
    DegenerateFamily,
    SizeLimitExceeded,
    LengthMismatch,
    ComplementarityViolation,
    InternalInconsistency,
    InvalidOrdering,
    DomainError,
    IdentityModeRequired,
    PreconditionViolation,
    DegenerateColumn,
    InsufficientSamples,
    ParseError,
    ConfigError,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline void require(bool condition, ErrorKind kind, const std::string& message) {
    if (!condition) {
        throw Error(kind, message);
    }
}

} // namespace triadic
