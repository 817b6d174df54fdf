#pragma once

#include <gmpxx.h>

#include <string>

namespace subnormal {

using BigInt = mpz_class;
using Rational = mpq_class;

// C(n, k) for n >= 0; zero when k < 0 or k > n.
BigInt binomial(long n, long k);

// Number of ways to write n as an ordered sum of k positive parts, i.e.
// C(n-1, k-1). The case k = 0 is 1 when n = 0 and 0 otherwise; this is the
// only place where C(-1, -1) = 1 is used.
BigInt compositions(long n, long k);

// Exact rational as "p/q" (always with a denominator, "0/1" for zero).
std::string fraction_string(const Rational& q);

// Natural logarithm of a positive big integer, accurate to double precision.
double log_of(const BigInt& x);

double to_double(const Rational& q);

BigInt power(long base, unsigned long exp);

}  // namespace subnormal
