#pragma once

#include <stdexcept>
#include <string>

namespace wright {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Domain / argument errors (CLI exit code 2).
struct InvalidParams : Error { using Error::Error; };
struct PoleError : Error { using Error::Error; };
struct KindMismatch : Error { using Error::Error; };
struct NonzeroConstantTerm : Error { using Error::Error; };
struct BadConstantTerm : Error { using Error::Error; };
struct NotInvertible : Error { using Error::Error; };
struct MatchFailure : Error { using Error::Error; };
struct NotApplicable : Error { using Error::Error; };
struct OrderTooHigh : Error { using Error::Error; };
struct BranchError : Error { using Error::Error; };
struct InsufficientCoeffs : Error { using Error::Error; };
struct NotPolynomialCase : Error { using Error::Error; };

// Regime / analytic-domain errors (CLI exit code 3).
struct RegimeError : Error { using Error::Error; };
struct DivergentSeries : RegimeError { using RegimeError::RegimeError; };
struct RadiusExceeded : RegimeError { using RegimeError::RegimeError; };
struct NoMinimumFound : RegimeError { using RegimeError::RegimeError; };
struct KappaOutOfRange : RegimeError { using RegimeError::RegimeError; };
struct KappaNotOne : RegimeError { using RegimeError::RegimeError; };
struct AsymptoticRegimeTooSmall : RegimeError { using RegimeError::RegimeError; };
struct ContourFailure : RegimeError { using RegimeError::RegimeError; };
struct TruncationFailure : RegimeError { using RegimeError::RegimeError; };

}  // namespace wright
