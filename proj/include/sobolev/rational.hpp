#pragma once

// Exact integer and rational arithmetic on top of GMP.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sobolev {

using Integer = mpz_class;

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator (GMP canonicalizes after every operation).
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) {
    throw std::domain_error("rational with zero denominator");
  }
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational make_rational(const Integer& num, const Integer& den = 1) {
  if (den == 0) {
    throw std::domain_error("rational with zero denominator");
  }
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& q) {
  if (is_integer(q)) {
    return q.get_num().get_str();
  }
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline Integer factorial(unsigned n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

inline Integer binomial(unsigned n, unsigned k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

/// q^e for any integer e; q must be nonzero when e < 0.
inline Rational pow(const Rational& q, long e) {
  if (e < 0) {
    if (q == 0) {
      throw std::domain_error("negative power of zero");
    }
    return pow(Rational(1) / q, -e);
  }
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), static_cast<unsigned long>(e));
  return make_rational(num, den);
}

}  // namespace sobolev
