#pragma once

// Comparison policy shared by every module.
//
// Values that are exact integers (and small enough to be represented exactly
// in a double) are compared exactly. Anything else falls back to a relative
// tolerance for equality and non-strict inequality, and to a tiny margin for
// strict inequality so that boundary points are excluded.

#include <string>

namespace psbm {

inline constexpr double kEqualityRelTol = 1e-9;
inline constexpr double kStrictMargin = 1e-12;
inline constexpr double kExactLimit = 9007199254740992.0;  // 2^53

bool is_exact_integer(double x) noexcept;

bool nearly_equal(double a, double b) noexcept;

/// a <= b, tolerant in floating mode.
bool less_or_equal(double a, double b) noexcept;

/// a < b, strict; in floating mode a must clear b by the strict margin.
bool strictly_less(double a, double b) noexcept;

/// The threshold used by strictly_less when b is not an exact integer.
double strict_threshold(double b) noexcept;

/// Shortest round-trip decimal text for a double ("7", "0.1", "1057.000722348313").
std::string format_real(double x);

}  // namespace psbm
