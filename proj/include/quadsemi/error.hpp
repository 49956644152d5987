#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace quadsemi {

enum class ErrorCode {
    DimensionMismatch,
    ReNotPSD,
    ParseError,
    SingularSpaceNontrivial,
    RealEigenvalueDetected,
    NonPositiveGamma,
    CutoffTooLarge,
    DegeneratePairing,
    NormalFormResidual,
    FiberTangency,
    ConvexityFailure,
    LeviFailure,
    NegativeAlpha,
    PQOrdering,
    GraphFailure,
    IntegrabilityFailure,
    UnsupportedDimension,
    ExpFailure,
    UnsupportedPair,
    InsufficientSamples,
    IoError,
    EmptyGrid,
};

// Coarse classification used for process exit codes.
enum class ErrorCategory {
    Hypothesis,  // the problem violates Re q >= 0 or S = {0}
    Numerical,   // a residual or conditioning check failed
    Input,       // malformed input or I/O
};

std::string_view error_name(ErrorCode code) noexcept;
ErrorCategory error_category(ErrorCode code) noexcept;

// Exit code: 2 hypothesis, 3 numerical, 4 I/O or input.
int exit_code(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace quadsemi
