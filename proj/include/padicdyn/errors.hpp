#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace padicdyn {

enum class ErrorKind {
    InvalidArgument,
    ContextMismatch,
    DivisionByIndistinguishableZero,
    InsufficientPrecision,
    NotCoprime,
    DegreeCapExceeded,
    BasinConditionViolated,
    ExtensionFieldRequired,
    PoleInBall,
    ZeroOrPoleInBall,
    CriticalValueInBall,
    PreimageAtInfinity,
    RadiusExceedsMu,
    BranchOverlap,
    BranchImageMismatch,
    ExpansionViolated,
    SaturationNotReached,
    MemoryCapExceeded,
    NotFoundWithinPeriodCap,
    EscapedCover,
    CriticalPointMeetsCover,
    UniquenessViolation,
    OrbitEscapedOmega,
    GOutsideCertifiedNeighborhood,
    ParseError,
};

std::string_view errorKindName(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(errorKindName(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Raised when fewer Q_p-rational roots were found than the Newton count
/// predicts; the missing roots live in a proper extension of Q_p.
class ExtensionFieldError : public Error {
public:
    ExtensionFieldError(const std::string& what, long newtonCount, long rationalFound)
        : Error(ErrorKind::ExtensionFieldRequired, what),
          newtonCount_(newtonCount), rationalFound_(rationalFound) {}

    long newtonCount() const noexcept { return newtonCount_; }
    long rationalFound() const noexcept { return rationalFound_; }
    long deficit() const noexcept { return newtonCount_ - rationalFound_; }

private:
    long newtonCount_;
    long rationalFound_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool condition, ErrorKind kind, const std::string& what) {
    if (!condition) throw Error(kind, what);
}

}  // namespace padicdyn
