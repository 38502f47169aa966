#pragma once

#include <string>

namespace predterms {

/// Fixed-point formatting via to_chars: locale independent, so output is
/// byte-identical everywhere.
std::string fixed(double v, int precision);

/// Shortest decimal string that round-trips to the same double.
std::string shortest(double v);

/// Round to `digits` significant digits, ties to even.
double signif(double v, int digits);

/// Decimal places needed to show `v` (already rounded) to 4 significant
/// digits; 0 for integers >= 1000 and for v == 0.
int signif4_decimals(double v);

}  // namespace predterms
