#pragma once

#include <stdexcept>
#include <string>

namespace gslab {

// Base class for every error the library raises deliberately.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Evaluation outside the profile's log-radius window.
struct OutOfDomain : Error {
    using Error::Error;
};

// 1 + g dropped below the required uniform ellipticity margin.
struct EllipticityViolation : Error {
    using Error::Error;
};

// Truncation tail of a ball average is too large relative to the result.
struct TailTooLarge : Error {
    using Error::Error;
};

// An operation was invoked on inputs that violate its hypotheses
// (e.g. asymptotic comparison for a profile without integrable variation).
struct HypothesisUnmet : Error {
    using Error::Error;
};

// The radial candidate lost positivity where it must stay positive.
struct SignChange : Error {
    using Error::Error;
};

// Dimension other than 2 or 3 requested.
struct UnsupportedDimension : Error {
    using Error::Error;
};

// Bad run configuration (CLI flags or config file).
struct ConfigInvalid : Error {
    using Error::Error;
};

// Linear system could not be solved to the requested residual.
struct SingularSystem : Error {
    using Error::Error;
};

// classify() produced verdicts that violate its own consistency rules.
struct ContradictoryVerdicts : Error {
    using Error::Error;
};

} // namespace gslab
