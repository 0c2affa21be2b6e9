// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace dnpi {

// Exact probabilities. All NPI kernels return values of this type; callers
// convert to double only for reporting and thresholds.
using Rational = mpq_class;

inline Rational ratio(std::int64_t num, std::int64_t den) {
  Rational r(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  r.canonicalize();
  return r;
}

inline double to_double(const Rational& r) { return r.get_d(); }

inline std::string to_string(const Rational& r) { return r.get_str(); }

// Binomial coefficient C(n, k) as an exact integer; zero when k > n.
inline mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

}  // namespace dnpi
