#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace secmom {

using Integer = mpz_class;
using Rational = mpq_class;

/// Binomial coefficient C(n, r) for arbitrary integer n; zero when r < 0 or
/// when n >= 0 and r > n.
Integer binomial(long n, long r);

Integer factorial(unsigned long n);

/// G(1+k) = 0! 1! ... (k-1)!.
Integer barnes_g(unsigned k);

/// "p/q" or "p" when the denominator is one.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Parses "p/q", "p", or a terminating decimal such as "0.25".
Rational parse_rational(const std::string& text);

bool is_integer(const Rational& q);

/// Throws ConsistencyError unless q is integral.
Integer require_integer(const Rational& q, const char* what);

double to_double(const Rational& q);

}  // namespace secmom
