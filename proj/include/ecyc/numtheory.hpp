#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace ecyc {

// Factorization in canonical form: strictly increasing primes, exponents >= 1.
// factorize(1) has an empty factor list.
struct FactoredInt {
  std::uint64_t value = 1;
  std::vector<std::pair<std::uint64_t, int>> factors;
};

bool is_prime(std::uint64_t n);

// Deterministic trial division against a precomputed prime table.
// Inputs in this project stay far below 2^53; throws on n = 0.
FactoredInt factorize(std::uint64_t n);

std::uint64_t euler_phi(const FactoredInt& n);
std::uint64_t euler_phi(std::uint64_t n);

// psi(n) = n * prod_{l | n} (1 + 1/l), multiplicative.
std::uint64_t psi(const FactoredInt& n);
std::uint64_t psi(std::uint64_t n);

// 0 if any square factor, otherwise (-1)^(number of prime factors).
int moebius(const FactoredInt& n);
int moebius(std::uint64_t n);

// Largest e with ell^e | n; throws unless ell is prime and n >= 1.
int padic_valuation(std::uint64_t ell, std::uint64_t n);

// All primes <= x in increasing order; requires x >= 2.
std::vector<std::uint32_t> primes_up_to(std::uint32_t x);
std::uint64_t prime_pi(std::uint32_t x);

// All divisors in increasing order.
std::vector<std::uint64_t> divisors(const FactoredInt& n);

// Smallest-prime-factor sieve. Built once, read-only afterwards; factors any
// n <= limit in O(log n) divisions. This is the shifted-prime sieve used to
// read off the factorization of p - 1 for every prime p <= limit in one pass.
class SpfSieve {
 public:
  explicit SpfSieve(std::uint32_t limit);

  std::uint32_t limit() const { return limit_; }
  bool is_prime(std::uint32_t n) const { return n >= 2 && spf_[n] == n; }
  std::uint32_t smallest_factor(std::uint32_t n) const { return spf_[n]; }
  FactoredInt factor(std::uint32_t n) const;

 private:
  std::uint32_t limit_;
  std::vector<std::uint32_t> spf_;
};

}  // namespace ecyc
