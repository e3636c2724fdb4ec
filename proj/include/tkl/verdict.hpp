#pragma once

// Shared verdict and error types.
//
// Decision procedures in this library are deliberately three-valued: a
// syntactic test can certify membership, certify non-membership, or admit
// that the input is outside its decidable fragment.  "Unknown" is a normal
// result, not a failure.

#include <stdexcept>
#include <string>
#include <utility>

namespace tkl {

// Membership verdict for function-class tests (conj-Smirnov, boundedness).
enum class ClassVerdict { Member, NotMember, Unknown };

inline const char* to_string(ClassVerdict v) {
    switch (v) {
        case ClassVerdict::Member: return "Member";
        case ClassVerdict::NotMember: return "NotMember";
        default: return "Unknown";
    }
}

// Three-valued verdict with a human-readable certificate.  Decided verdicts
// (Yes/No) always carry a certificate naming the rule that fired; Unknown
// carries the reason the input was undecidable.
struct TriVerdict {
    enum Value { Yes, No, Unknown };

    Value value = Unknown;
    std::string certificate;

    static TriVerdict yes(std::string cert) { return {Yes, std::move(cert)}; }
    static TriVerdict no(std::string cert) { return {No, std::move(cert)}; }
    static TriVerdict unknown(std::string cert) { return {Unknown, std::move(cert)}; }

    bool is_yes() const { return value == Yes; }
    bool is_no() const { return value == No; }
    bool decided() const { return value != Unknown; }
};

inline const char* to_string(TriVerdict::Value v) {
    switch (v) {
        case TriVerdict::Yes: return "Yes";
        case TriVerdict::No: return "No";
        default: return "Unknown";
    }
}

// Error conditions surfaced by the library.  One exception type with a code
// keeps catch sites simple; the code names the contract that was violated.
enum class Errc {
    MixedSpace,
    NotAnalytic,
    NotOuter,
    NonInvertible,
    UnboundedMultiplier,
    HypothesisFailed,
    NotRational,
    BadParameters,
    BadRadius,
    WindowTooLarge,
    NotSeparated,
    SyntaxError,
    UnknownSeqRef,
    FormatError,
    EmptyWindow,
    NonIntegrableLogModulus,
    ZeroAtOrigin,
    PoleHit,
    MassHit,
    PhaseNotMonotone,
    NotEvaluable,
    IoError,
};

inline const char* to_string(Errc c) {
    switch (c) {
        case Errc::MixedSpace: return "MixedSpace";
        case Errc::NotAnalytic: return "NotAnalytic";
        case Errc::NotOuter: return "NotOuter";
        case Errc::NonInvertible: return "NonInvertible";
        case Errc::UnboundedMultiplier: return "UnboundedMultiplier";
        case Errc::HypothesisFailed: return "HypothesisFailed";
        case Errc::NotRational: return "NotRational";
        case Errc::BadParameters: return "BadParameters";
        case Errc::BadRadius: return "BadRadius";
        case Errc::WindowTooLarge: return "WindowTooLarge";
        case Errc::NotSeparated: return "NotSeparated";
        case Errc::SyntaxError: return "SyntaxError";
        case Errc::UnknownSeqRef: return "UnknownSeqRef";
        case Errc::FormatError: return "FormatError";
        case Errc::EmptyWindow: return "EmptyWindow";
        case Errc::NonIntegrableLogModulus: return "NonIntegrableLogModulus";
        case Errc::ZeroAtOrigin: return "ZeroAtOrigin";
        case Errc::PoleHit: return "PoleHit";
        case Errc::MassHit: return "MassHit";
        case Errc::PhaseNotMonotone: return "PhaseNotMonotone";
        case Errc::NotEvaluable: return "NotEvaluable";
        case Errc::IoError: return "IoError";
    }
    return "Error";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what_arg)
        : std::runtime_error(std::string(to_string(code)) + ": " + what_arg), code_(code) {}

    // Position-carrying variant used by the expression parser; line and
    // column are 1-based.
    Error(Errc code, const std::string& what_arg, int line, int column)
        : std::runtime_error(std::string(to_string(code)) + " at " + std::to_string(line) + ":" +
                             std::to_string(column) + ": " + what_arg),
          code_(code), line_(line), column_(column) {}

    Errc code() const { return code_; }
    int line() const { return line_; }
    int column() const { return column_; }
    bool has_position() const { return line_ > 0; }

private:
    Errc code_;
    int line_ = 0;
    int column_ = 0;
};

} // namespace tkl
