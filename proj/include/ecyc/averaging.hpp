#pragma once

#include <cstdint>
#include <vector>

#include "ecyc/census.hpp"
#include "ecyc/numtheory.hpp"

namespace ecyc {

/*
 * Multiplicative functions averaged over shifted primes p - 1:
 *   F(n)  = prod_{l | n, l !| m} (1 - 1/(l(l^2-1)))
 *   F'(n) = F(n) * chi_{ell0}(n),  chi_{ell0}(n) = [ell0 does not divide n]
 * Mean values over p <= x converge to Euler products with local factors
 * (1 - 1/(l(l-1)(l^2-1))) over l !| m, times (ell0-2)/(ell0-1) for F'.
 */
struct MultiplicativeSpec {
  enum class Kind { F, FPrime, Chi };
  Kind kind = Kind::F;
  std::uint32_t m = 1;     // modulus whose prime divisors are excluded
  std::uint32_t ell0 = 1;  // odd prime of the torsion label (Chi/FPrime)

  static MultiplicativeSpec forF(std::uint32_t m);
  static MultiplicativeSpec forFPrime(std::uint32_t m);   // m not a two-power
  static MultiplicativeSpec forChi(std::uint32_t ell0);

  long double eval(const FactoredInt& n) const;
  long double predicted_limit(std::uint64_t truncation = 1000000) const;
};

struct MeanValueResult {
  long double measured = 0.0L;
  long double predicted = 0.0L;
  std::uint64_t x = 0;
  std::uint64_t prime_count = 0;
};

// (1/pi(x)) sum_{p <= x} spec(p - 1) via the shifted-prime sieve.
MeanValueResult mean_over_shifted_primes(const MultiplicativeSpec& spec, std::uint32_t x,
                                         const SpfSieve& spf);

// #{good primes p <= x : E_m(a) mod p cyclic}; bad primes of the global
// curve are excluded from the count. Throws on globally invalid a.
std::uint64_t pi_cyc(std::uint32_t m, long long a, std::uint32_t x);

struct PerPrimeRow {
  std::uint32_t p = 0;
  std::uint64_t valid_count = 0;
  std::uint64_t cyclic_count = 0;
  double density = 0.0;         // cyclic/p (density mode) or cyclic/valid (direct)
  double cum_measured = 0.0;
  double cum_predicted = 0.0;
  double rel_error = 0.0;
};

enum class AverageMode { direct, density };

struct AverageReport {
  std::uint32_t m = 0;
  std::uint64_t x = 0;
  AverageMode mode = AverageMode::density;
  std::uint64_t A = 0;          // direct mode only
  std::uint64_t parameters = 0; // direct mode: number of nonsingular parameters
  double measured = 0.0;
  double predicted = 0.0;
  double relative_error = 0.0;
  double predicted_tail_bound = 0.0;
  bool regime_warning = false;  // direct mode with A <= x
  std::vector<PerPrimeRow> rows;
};

// (sum_{|a| <= A} pi_cyc) / #{nonsingular parameters}, per-prime breakdown
// included. The asymptotic regime needs A larger than x; a warning flags
// runs outside it.
AverageReport average_direct(std::uint32_t m, std::uint64_t A, std::uint32_t x,
                             unsigned workers = 1);

// sum_{5 <= p <= x} s_m(p)/p where s_m(p) counts valid parameters in F_p
// with cyclic curve; the A -> infinity limit of the direct average.
AverageReport average_density(std::uint32_t m, std::uint32_t x, unsigned workers = 1);

// c_m * prod_{l !| m} (1 - 1/(l(l-1)(l^2-1))) * pi(x).
double predicted_main_term(std::uint32_t m, std::uint32_t x, std::uint64_t truncation = 1000000);

}  // namespace ecyc
