#pragma once

// Exact integer and rational arithmetic helpers on top of GMP.

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

namespace gsdyn {

using Integer = mpz_class;
using Rational = mpq_class;

// Parses "p/q", "p", or a decimal literal such as "0.3" or "-1.25e-2" into an
// exact rational. Decimal literals are read as the exact decimal value, not
// the nearest double.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& value);

// Exact rational equal to the given double (every finite double is dyadic).
Rational rational_from_double(double value);

double to_double(const Rational& value);

// n! with a process-wide memo. Throws std::out_of_range above factorial_cap().
const Integer& factorial(std::size_t n);
std::size_t factorial_cap();

Integer binomial(std::size_t n, std::size_t k);

Integer ipow(const Integer& base, std::size_t exponent);
Rational ipow(const Rational& base, std::size_t exponent);

// Natural log of |value| for arbitrarily large integers and rationals.
double log_abs(const Integer& value);
double log_abs(const Rational& value);

}  // namespace gsdyn
