#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace tuttemc {

using Rational = mpq_class;

/// Exact parse of "7", "-3/4", "1.5", "2.5e-3".
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);
double to_double(const Rational& q);
inline double to_double(double v) { return v; }

/// base^exp by squaring; ipow(0, 0) == 1.
template <class T>
T ipow(T base, unsigned long exp) {
  T result(1);
  while (exp > 0) {
    if (exp & 1u) result *= base;
    exp >>= 1;
    if (exp > 0) base *= base;
  }
  return result;
}

}  // namespace tuttemc
