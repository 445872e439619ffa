#pragma once

#include <string>

namespace cvrisk {

/// Fixed-point text of `x` rounded half away from zero at `decimals` places.
///
/// Rounding operates on the shortest decimal string that round-trips to `x`,
/// so 0.125 -> "0.13" and 2.675 -> "2.68" as a reader of the printed value
/// would expect. Negative zero results print without a sign.
std::string format_half_up(double x, int decimals);

/// Numeric value of format_half_up(x, decimals).
double round_half_up(double x, int decimals);

/// Shortest decimal text that parses back to exactly `x`.
std::string format_shortest(double x);

}  // namespace cvrisk
