#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace ecyc {

using BigInt = mpz_class;

// Exact rational arithmetic. All density identities in this project are
// exact equalities, so they are evaluated over Q; floating point appears
// only in report columns. GMP keeps values canonical (den > 0, gcd = 1).
using Rational = mpq_class;

inline Rational ratio(long long n, long long d = 1) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  BigInt nn(static_cast<long>(n));
  BigInt dd(static_cast<long>(d));
  Rational r(nn, dd);
  r.canonicalize();
  return r;
}

inline Rational ratio(const BigInt& n, const BigInt& d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline BigInt numerator(const Rational& r) { return r.get_num(); }
inline BigInt denominator(const Rational& r) { return r.get_den(); }

inline double to_double(const Rational& r) { return r.get_d(); }

inline std::string to_string(const Rational& r) { return r.get_str(); }

// base^e with e possibly negative (base > 0).
inline Rational rational_pow(std::uint64_t base, int e) {
  BigInt b(static_cast<unsigned long>(base));
  BigInt p;
  mpz_pow_ui(p.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? ratio(BigInt(1), p) : Rational(p);
}

}  // namespace ecyc
