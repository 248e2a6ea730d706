// Named failure modes. Each corresponds to a contract violation or a
// degenerate mathematical situation that must be surfaced, never absorbed.
#pragma once

#include <stdexcept>
#include <string>

namespace qvx {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Arithmetic layer
struct DivisionByZero : Error { using Error::Error; };
struct NonInvertibleDenominator : Error { using Error::Error; };
struct NonHomogeneousDenominator : Error { using Error::Error; };
struct NonzeroConstantTerm : Error { using Error::Error; };

// Partitions
struct BoxNotInPartition : Error { using Error::Error; };

// Characters / localization
struct ResidualFixedPart : Error { using Error::Error; };
struct ZeroWeight : Error { using Error::Error; };
struct PoleAtMinusOne : Error { using Error::Error; };
struct NegativeEpsilonOrderSurvives : Error { using Error::Error; };

// Closed forms
struct NonPolynomialAfterClearing : Error { using Error::Error; };
struct OutOfStatedRange : Error { using Error::Error; };

// Persistence
struct CacheFormatMismatch : Error { using Error::Error; };

}  // namespace qvx
