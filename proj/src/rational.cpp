#include "nbwalk/rational.hpp"

#include <cstdio>

#include "nbwalk/errors.hpp"

namespace nbwalk {

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) fail(ErrorCode::InvalidParameter, "zero denominator");
  Rational r{mpz_class(std::to_string(num)), mpz_class(std::to_string(den))};
  r.canonicalize();
  return r;
}

std::string to_fraction_string(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_decimal_string(const Rational& value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value.get_d());
  return buf;
}

double to_double(const Rational& value) { return value.get_d(); }

Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

}  // namespace nbwalk
