#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace tlab {

// Exact rationals. mpq_class keeps values canonical (reduced, positive
// denominator) after every arithmetic operation.
using Rat = mpq_class;
using Int = mpz_class;

Rat make_rat(long num, long den = 1);

// Accepts "p/q", "p", or a plain decimal such as "0.95" or "-1.25e-3"
// (decimals are converted exactly, so "0.9" is 9/10).
Rat parse_rat(std::string_view text);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rat& value);

double to_double(const Rat& value);

Rat pow(const Rat& base, unsigned exponent);

Int from_int128(__int128 value);
Rat rat_from_int128(__int128 num, __int128 den);

// Numerator/denominator pair for hot loops; throws invalid-argument when the
// value does not fit into 64-bit integers.
struct SmallFraction {
  std::int64_t num = 0;
  std::int64_t den = 1;
};
SmallFraction small_fraction(const Rat& value);

}  // namespace tlab
