#pragma once

#include <stdexcept>
#include <string>

namespace matlie {

/// Structural failure classes surfaced by the toolkit. Anything that is a
/// programming error (shape mismatch, wrong parent) throws too, so callers
/// can distinguish "this instance is outside the supported regime" from
/// "the caller misused the API" by the code.
enum class ErrorCode {
    FieldMismatch,
    DimensionMismatch,
    ParentMismatch,
    IndexOutOfRange,
    InvalidArgument,
    DivisionByZero,
    NotPrime,
    NotAssociative,
    NotSplit,
    RadicalUnsupported,
    BlockTooSmall,
    NotBimodule,
    NotLieClosed,
    HypothesisViolated,
    InternalInconsistency,
    CharPUnsupported,
    NonDiagonalizable,
    ProfileInfeasible,
    ParseError,
};

inline const char* to_string(ErrorCode c) {
    switch (c) {
        case ErrorCode::FieldMismatch: return "FieldMismatch";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::ParentMismatch: return "ParentMismatch";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::NotPrime: return "NotPrime";
        case ErrorCode::NotAssociative: return "NotAssociative";
        case ErrorCode::NotSplit: return "NotSplit";
        case ErrorCode::RadicalUnsupported: return "RadicalUnsupported";
        case ErrorCode::BlockTooSmall: return "BlockTooSmall";
        case ErrorCode::NotBimodule: return "NotBimodule";
        case ErrorCode::NotLieClosed: return "NotLieClosed";
        case ErrorCode::HypothesisViolated: return "HypothesisViolated";
        case ErrorCode::InternalInconsistency: return "InternalInconsistency";
        case ErrorCode::CharPUnsupported: return "CharPUnsupported";
        case ErrorCode::NonDiagonalizable: return "NonDiagonalizable";
        case ErrorCode::ProfileInfeasible: return "ProfileInfeasible";
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

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace matlie
