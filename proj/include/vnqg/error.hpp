#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vnqg {

enum class ErrorKind {
    NotHermitian,
    NotPositiveDefinite,
    Singular,
    DimensionMismatch,
    Inconsistent,
    InvalidTable,
    NoPositiveSolution,
    NonUnique,
    GramNotPD,
    NotUnitary,
    SpanDeficient,
    NotInAlgebra,
    ValidationFailed,
    PhaseMismatch,
    SpecInvalid,
    VersionUnsupported,
    IoError,
};

inline std::string_view to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::Inconsistent: return "Inconsistent";
    case ErrorKind::InvalidTable: return "InvalidTable";
    case ErrorKind::NoPositiveSolution: return "NoPositiveSolution";
    case ErrorKind::NonUnique: return "NonUnique";
    case ErrorKind::GramNotPD: return "GramNotPD";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::SpanDeficient: return "SpanDeficient";
    case ErrorKind::NotInAlgebra: return "NotInAlgebra";
    case ErrorKind::ValidationFailed: return "ValidationFailed";
    case ErrorKind::PhaseMismatch: return "PhaseMismatch";
    case ErrorKind::SpecInvalid: return "SpecInvalid";
    case ErrorKind::VersionUnsupported: return "VersionUnsupported";
    case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a kind so callers (and tests)
/// can dispatch on it without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace vnqg
