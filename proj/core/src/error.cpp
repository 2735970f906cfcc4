#include "triadic/error.hpp"

namespace triadic {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::InvalidLevel: return "InvalidLevel";
        case ErrorKind::DegenerateFamily: return "DegenerateFamily";
        case ErrorKind::SizeLimitExceeded: return "SizeLimitExceeded";
        case ErrorKind::LengthMismatch: return "LengthMismatch";
        case ErrorKind::ComplementarityViolation: return "ComplementarityViolation";
        case ErrorKind::InternalInconsistency: return "InternalInconsistency";
        case ErrorKind::InvalidOrdering: return "InvalidOrdering";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::IdentityModeRequired: return "IdentityModeRequired";
        case ErrorKind::PreconditionViolation: return "PreconditionViolation";
        case ErrorKind::DegenerateColumn: return "DegenerateColumn";
        case ErrorKind::InsufficientSamples: return "InsufficientSamples";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

} // namespace triadic
