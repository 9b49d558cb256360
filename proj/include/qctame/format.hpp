#pragma once

#include <string>

namespace qctame {

/// Machine-output precision; round-trips every double.
inline constexpr int kMachineDigits = 17;
/// Human-summary precision.
inline constexpr int kHumanDigits = 6;

std::string format_double(double value, int significant_digits = kMachineDigits);

}  // namespace qctame
