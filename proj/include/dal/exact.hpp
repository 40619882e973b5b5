#pragma once

// Bridges between GMP integers/rationals and double intervals.

#include <gmpxx.h>

#include <cstddef>
#include <string>

#include "dal/interval.hpp"

namespace dal {

// Enclosure of a nonnegative integer as m * 2^exp with m in [0.5, 1].
struct ScaledEnclosure {
  Interval mantissa;
  long exponent = 0;
};

ScaledEnclosure scaled_enclosure(const mpz_class& z);

Interval enclose(const mpz_class& z);
Interval enclose(const mpq_class& q);

// Enclosure of num/den without forming the rational; works far outside double range
// for the operands as long as the quotient itself is representable.
Interval enclose_ratio(const mpz_class& num, const mpz_class& den);

// Enclosure of ln(z) for z >= 1.
Interval enclose_log(const mpz_class& z);

// Exact rational value of a double.
mpq_class exact(double x);

// Exact test: does [lo, hi] contain q?
bool encloses(const Interval& a, const mpq_class& q);

std::string to_string(const mpz_class& z);
std::string to_string(const mpq_class& q);

}  // namespace dal
