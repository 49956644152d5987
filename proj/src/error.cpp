#include "quadsemi/error.hpp"

namespace quadsemi {

std::string_view error_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::ReNotPSD: return "ReNotPSD";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::SingularSpaceNontrivial: return "SingularSpaceNontrivial";
        case ErrorCode::RealEigenvalueDetected: return "RealEigenvalueDetected";
        case ErrorCode::NonPositiveGamma: return "NonPositiveGamma";
        case ErrorCode::CutoffTooLarge: return "CutoffTooLarge";
        case ErrorCode::DegeneratePairing: return "DegeneratePairing";
        case ErrorCode::NormalFormResidual: return "NormalFormResidual";
        case ErrorCode::FiberTangency: return "FiberTangency";
        case ErrorCode::ConvexityFailure: return "ConvexityFailure";
        case ErrorCode::LeviFailure: return "LeviFailure";
        case ErrorCode::NegativeAlpha: return "NegativeAlpha";
        case ErrorCode::PQOrdering: return "PQOrdering";
        case ErrorCode::GraphFailure: return "GraphFailure";
        case ErrorCode::IntegrabilityFailure: return "IntegrabilityFailure";
        case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
        case ErrorCode::ExpFailure: return "ExpFailure";
        case ErrorCode::UnsupportedPair: return "UnsupportedPair";
        case ErrorCode::InsufficientSamples: return "InsufficientSamples";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::EmptyGrid: return "EmptyGrid";
    }
    return "Unknown";
}

ErrorCategory error_category(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::ReNotPSD:
        case ErrorCode::SingularSpaceNontrivial:
        case ErrorCode::RealEigenvalueDetected:
        case ErrorCode::NonPositiveGamma:
            return ErrorCategory::Hypothesis;
        case ErrorCode::DimensionMismatch:
        case ErrorCode::ParseError:
        case ErrorCode::IoError:
        case ErrorCode::EmptyGrid:
        case ErrorCode::UnsupportedDimension:
        case ErrorCode::UnsupportedPair:
        case ErrorCode::InsufficientSamples:
        case ErrorCode::CutoffTooLarge:
        case ErrorCode::PQOrdering:
            return ErrorCategory::Input;
        default:
            return ErrorCategory::Numerical;
    }
}

int exit_code(ErrorCode code) noexcept {
    switch (error_category(code)) {
        case ErrorCategory::Hypothesis: return 2;
        case ErrorCategory::Numerical: return 3;
        case ErrorCategory::Input: return 4;
    }
    return 1;
}

}  // namespace quadsemi
