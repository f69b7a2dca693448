#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace nbwalk {

// Arbitrary-precision rational; always kept canonical.
using Rational = mpq_class;

Rational make_rational(std::int64_t num, std::int64_t den = 1);

// "num/den", always with an explicit denominator.
std::string to_fraction_string(const Rational& value);

// 12 significant digits.
std::string to_decimal_string(const Rational& value);

double to_double(const Rational& value);

Rational abs(const Rational& value);

}  // namespace nbwalk
