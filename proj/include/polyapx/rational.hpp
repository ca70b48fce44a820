#pragma once

#include <gmpxx.h>

#include <string>

namespace polyapx {

using Rational = mpq_class;
using Integer = mpz_class;

Rational rat(long num, long den = 1);
Rational rat(const Integer& num, const Integer& den);

// "num/den" (den omitted when 1); parse accepts "a", "a/b", and decimals like "0.125"
std::string to_string(const Rational& q);
Rational parse_rational(const std::string& s);

Rational abs(const Rational& q);
Rational pow(const Rational& q, long e);
Integer floor(const Rational& q);
Integer ceil(const Rational& q);
bool is_integer(const Rational& q);
int sign(const Rational& q);

Integer binomial(long n, long k);
Integer factorial(long n);
Integer pow2(long e);

// ceil(log2(q)) for q > 0, exact
long ceil_log2(const Rational& q);

}  // namespace polyapx
