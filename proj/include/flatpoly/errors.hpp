#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace flatpoly {

// Domain error conditions. CLI maps any DomainError to exit code 2 and
// prints the enum name, so the names here are part of the interface.
enum class Errc {
    EmptyPolynomial,
    GridTooCoarse,
    DuplicateExponent,
    DegenerateHLConstant,
    ZeroNotInsideDisk,
    SecondDerivativeNotBoundedAway,
    RootFindingDiverged,
    FactorizationInconsistent,
    LogSingularOnGrid,
    ConstantModulus,
    NotUnitNorm,
    NotAnalytic,
    GramIdentityViolation,
    ExpansionTooLarge,
    InvalidGramSum,
    SeriesLengthMismatch,
    StabilizationViolated,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::EmptyPolynomial: return "EmptyPolynomial";
        case Errc::GridTooCoarse: return "GridTooCoarse";
        case Errc::DuplicateExponent: return "DuplicateExponent";
        case Errc::DegenerateHLConstant: return "DegenerateHLConstant";
        case Errc::ZeroNotInsideDisk: return "ZeroNotInsideDisk";
        case Errc::SecondDerivativeNotBoundedAway: return "SecondDerivativeNotBoundedAway";
        case Errc::RootFindingDiverged: return "RootFindingDiverged";
        case Errc::FactorizationInconsistent: return "FactorizationInconsistent";
        case Errc::LogSingularOnGrid: return "LogSingularOnGrid";
        case Errc::ConstantModulus: return "ConstantModulus";
        case Errc::NotUnitNorm: return "NotUnitNorm";
        case Errc::NotAnalytic: return "NotAnalytic";
        case Errc::GramIdentityViolation: return "GramIdentityViolation";
        case Errc::ExpansionTooLarge: return "ExpansionTooLarge";
        case Errc::InvalidGramSum: return "InvalidGramSum";
        case Errc::SeriesLengthMismatch: return "SeriesLengthMismatch";
        case Errc::StabilizationViolated: return "StabilizationViolated";
    }
    return "UnknownError";
}

class DomainError : public std::runtime_error {
public:
    DomainError(Errc code, const std::string& detail)
        : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

// Thrown when the simultaneous root iteration fails to reach its residual
// target; carries the per-root residuals for diagnosis.
class RootFindingError : public DomainError {
public:
    RootFindingError(std::string detail, std::vector<double> residuals)
        : DomainError(Errc::RootFindingDiverged, detail), residuals_(std::move(residuals)) {}

    const std::vector<double>& residuals() const noexcept { return residuals_; }

private:
    std::vector<double> residuals_;
};

}  // namespace flatpoly
