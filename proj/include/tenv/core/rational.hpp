#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace tenv {

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonical text form: "a" or "a/b" with b > 1.
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

/// Parses "a", "-a", or "a/b". Throws std::invalid_argument on bad input.
Rational parse_rational(std::string_view text);

Integer factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);

}  // namespace tenv
