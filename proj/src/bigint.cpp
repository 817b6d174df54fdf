#include "subnormal/bigint.hpp"

#include <cmath>

namespace subnormal {

BigInt binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return r;
}

BigInt compositions(long n, long k) {
  if (k == 0) return n == 0 ? 1 : 0;
  return binomial(n - 1, k - 1);
}

std::string fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double log_of(const BigInt& x) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

double to_double(const Rational& q) {
  // Ratio of logarithms keeps huge numerators/denominators in range.
  if (q == 0) return 0.0;
  const double sign = q < 0 ? -1.0 : 1.0;
  const BigInt num = abs(q.get_num());
  return sign * std::exp(log_of(num) - log_of(q.get_den()));
}

BigInt power(long base, unsigned long exp) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), exp);
  return r;
}

}  // namespace subnormal
