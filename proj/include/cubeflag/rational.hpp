#pragma once

#include <gmpxx.h>

#include <string>

namespace cubeflag {

// All exact arithmetic in the project runs on GMP rationals.  Values are kept
// canonicalized (lowest terms, positive denominator).
using Rat = mpq_class;

// Parses "p", "p/q", or a decimal literal like "0.6069" / "-1.25e-3" into an
// exact rational.  Decimal input is interpreted exactly (no binary floating
// point round-trip).  Throws Error on malformed input or zero denominator.
Rat rat_parse(const std::string& text);

// Canonical "p/q" form ("p" when the denominator is 1).
std::string rat_to_string(const Rat& value);

// Decimal expansion with `digits` digits after the point, truncated toward
// zero, computed by integer long division.  Used for display only.
std::string rat_decimal(const Rat& value, int digits);

}  // namespace cubeflag
