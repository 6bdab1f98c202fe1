#pragma once

#include <stdexcept>
#include <string>

namespace gamma2lab {

// Relative positivity floor: a field enters a power/log/quotient path only if
// min(F) > kPositivityEps * max|F|.  Violations are rejected, never clamped.
inline constexpr double kPositivityEps = 1e-8;

// Denominator guard used when normalizing margins and ratios.
inline constexpr double kTinyDenominator = 1e-300;

// NaN/Inf or loss of positivity produced *during* a computation.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace gamma2lab
