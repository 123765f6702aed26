#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace coverlab {

// Exact arbitrary-precision scalars. mpq_class keeps values in lowest terms
// with a positive denominator once canonicalized; every constructor below
// guarantees that form, so equality is plain value equality everywhere.
using Int = mpz_class;
using Rat = mpq_class;

Rat makeRat(const Int& num, const Int& den);
Rat makeRat(long num, long den = 1);

// Parses "p/q" or "p" with optional leading '-'. Throws std::invalid_argument
// on malformed input or a zero denominator.
Rat ratFromString(std::string_view text);

// Lowest-terms rendering: "p/q", or just "p" when the denominator is 1.
std::string ratToString(const Rat& value);

// Fixed-point rendering with exactly `digits` fractional digits, rounding
// half away from zero. Used by the SVG emitter; never goes through floating
// point so the output is reproducible byte for byte.
std::string ratToDecimal(const Rat& value, int digits);

int sign(const Rat& value);

std::size_t hashInt(const Int& value);
std::size_t hashCombine(std::size_t seed, std::size_t value);

// Number of bits in numerator plus denominator; growth guard for generated
// coordinates.
std::size_t ratBitLength(const Rat& value);

}  // namespace coverlab
