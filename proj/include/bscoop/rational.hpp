#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bscoop {

// Exact rational scalar used for every bound/cost computation. Arbitrary
// precision: simplex pivots and min-cut sums must never overflow or round.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rat make_rat(long long num, long long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  return Rat(BigInt(num), BigInt(den));
}

// Parses "43/15", "2.867", "-0.5", "3". Decimal strings convert exactly
// (digits/10^places), so config values keep their printed meaning.
Rat rat_from_string(const std::string& text);

// Converts a double through its shortest round-trip decimal representation,
// so a JSON literal like 1.7 ingests as 17/10 rather than the nearest binary.
Rat rat_from_double(double value);

std::string rat_to_fraction(const Rat& q);                  // "num/den" or "num"
std::string rat_to_decimal(const Rat& q, int sig_digits = 12);
std::string rat_to_fixed(const Rat& q, int places);         // round half away from zero

double rat_to_double(const Rat& q);

}  // namespace bscoop
