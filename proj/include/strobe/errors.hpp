#pragma once

#include <stdexcept>
#include <string>

namespace strobe {

/* Base class for every error the toolkit throws on contract violations.
 * Messages always name the violated invariant so CLI users see *why*,
 * not just *that*, an input was rejected. */
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Configuration / input shape problems (CLI exit code 1).
struct ConfigInvalid : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct DimensionTooLarge : Error { using Error::Error; };
struct InvalidResourceCount : Error { using Error::Error; };
struct InvalidDistribution : Error { using Error::Error; };
struct NonPositiveInput : Error { using Error::Error; };

// Numerical-quality failures (CLI exit code 2).
struct StepTooSmall : Error { using Error::Error; };
struct TruncationInsufficient : Error { using Error::Error; };
struct NotConverged : Error { using Error::Error; };
struct AmbiguousLikelihood : Error { using Error::Error; };

// Case-condition violations (CLI exit code 3).
struct CaseConditionViolated : Error { using Error::Error; };
struct SingularBeta : Error { using Error::Error; };

} // namespace strobe
