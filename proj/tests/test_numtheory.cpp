#include <doctest.h>

#include <numeric>

#include "ecyc/numtheory.hpp"
#include "ecyc/rational.hpp"
#include "test_util.hpp"

using namespace ecyc;

namespace {

// Independent oracles built on raw loops, not on factorize().
std::uint64_t phi_by_counting(std::uint64_t n) {
  std::uint64_t c = 0;
  for (std::uint64_t k = 1; k <= n; ++k) c += std::gcd(k, n) == 1;
  return c;
}

std::uint64_t psi_by_squarefree_divisors(std::uint64_t n) {
  // psi = sum over squarefree d | n of n/d
  std::uint64_t s = 0;
  for (std::uint64_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    bool squarefree = true;
    for (std::uint64_t q = 2; q * q <= d; ++q) {
      if (d % (q * q) == 0) squarefree = false;
    }
    if (squarefree) s += n / d;
  }
  return s;
}

int mobius_by_division(std::uint64_t n) {
  int count = 0;
  for (std::uint64_t q = 2; q <= n; ++q) {
    if (n % q != 0) continue;
    if (n % (q * q) == 0) return 0;
    ++count;
    while (n % q == 0) n /= q;
  }
  return count % 2 == 0 ? 1 : -1;
}

}  // namespace

TEST_SUITE_BEGIN("numtheory");

TEST_CASE("factorize canonical forms") {
  CHECK(factorize(1).factors.empty());
  auto f12 = factorize(12);
  REQUIRE(f12.factors.size() == 2);
  CHECK(f12.factors[0] == std::pair<std::uint64_t, int>{2, 2});
  CHECK(f12.factors[1] == std::pair<std::uint64_t, int>{3, 1});
  auto f97 = factorize(97);
  REQUIRE(f97.factors.size() == 1);
  CHECK(f97.factors[0] == std::pair<std::uint64_t, int>{97, 1});
  CHECK_THROWS_AS(factorize(0), std::invalid_argument);
}

TEST_CASE("factorize reconstructs its input") {
  TestRng rng;
  for (int i = 0; i < 500; ++i) {
    std::uint64_t n = 1 + rng.below(1000000);
    auto f = factorize(n);
    std::uint64_t prod = 1;
    std::uint64_t last = 0;
    for (auto [p, e] : f.factors) {
      CHECK(p > last);
      CHECK(e >= 1);
      last = p;
      for (int k = 0; k < e; ++k) prod *= p;
    }
    CHECK(prod == n);
  }
}

TEST_CASE("euler phi examples and oracle") {
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(9) == 6);
  CHECK(euler_phi(10) == 4);
  for (std::uint64_t n = 1; n <= 200; ++n) CHECK(euler_phi(n) == phi_by_counting(n));
}

TEST_CASE("psi examples and oracle") {
  CHECK(psi(1) == 1);
  CHECK(psi(4) == 6);
  CHECK(psi(12) == 24);
  for (std::uint64_t n = 1; n <= 200; ++n) CHECK(psi(n) == psi_by_squarefree_divisors(n));
}

TEST_CASE("moebius examples and oracle") {
  CHECK(moebius(1) == 1);
  CHECK(moebius(6) == 1);
  CHECK(moebius(12) == 0);
  for (std::uint64_t n = 1; n <= 300; ++n) CHECK(moebius(n) == mobius_by_division(n));
}

TEST_CASE("phi and psi are multiplicative") {
  TestRng rng;
  int done = 0;
  while (done < 200) {
    std::uint64_t a = 1 + rng.below(1000), b = 1 + rng.below(1000);
    if (std::gcd(a, b) != 1) continue;
    ++done;
    CHECK(euler_phi(a * b) == euler_phi(a) * euler_phi(b));
    CHECK(psi(a * b) == psi(a) * psi(b));
  }
}

TEST_CASE("moebius divisor sums vanish beyond n = 1") {
  for (std::uint64_t n = 1; n <= 10000; ++n) {
    long long s = 0;
    for (std::uint64_t d : divisors(factorize(n))) s += moebius(factorize(d));
    CHECK(s == (n == 1 ? 1 : 0));
  }
}

TEST_CASE("phi(n) psi(n) = n^2 prod (1 - 1/l^2)") {
  for (std::uint64_t n = 1; n <= 10000; ++n) {
    Rational rhs = ratio(static_cast<long long>(n * n));
    for (auto [l, e] : factorize(n).factors) {
      (void)e;
      rhs *= ratio(static_cast<long long>(l * l - 1), static_cast<long long>(l * l));
    }
    CHECK(ratio(static_cast<long long>(euler_phi(n) * psi(n))) == rhs);
  }
}

TEST_CASE("padic valuation") {
  CHECK(padic_valuation(3, 10) == 0);
  CHECK(padic_valuation(2, 12) == 2);
  CHECK(padic_valuation(5, 10) == 1);
  CHECK_THROWS_AS(padic_valuation(6, 10), std::invalid_argument);
}

TEST_CASE("prime sieve against trial division") {
  CHECK(prime_pi(2) == 1);
  CHECK(prime_pi(10) == 4);
  CHECK(prime_pi(100) == 25);
  CHECK_THROWS_AS(primes_up_to(1), std::invalid_argument);
  auto primes = primes_up_to(10000);
  std::size_t idx = 0;
  for (std::uint32_t n = 2; n <= 10000; ++n) {
    if (is_prime(n)) {
      REQUIRE(idx < primes.size());
      CHECK(primes[idx] == n);
      ++idx;
    }
  }
  CHECK(idx == primes.size());
}

TEST_CASE("divisors are sorted and complete") {
  auto d = divisors(factorize(60));
  CHECK(d == std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6, 10, 12, 15, 20, 30, 60});
}

TEST_CASE("spf sieve factors shifted primes") {
  SpfSieve spf(10000);
  for (std::uint32_t p : primes_up_to(10000)) {
    if (p == 2) continue;
    auto viaSieve = spf.factor(p - 1);
    auto direct = factorize(p - 1);
    CHECK(viaSieve.factors == direct.factors);
  }
  CHECK(spf.is_prime(9973));
  CHECK(!spf.is_prime(9999));
}

TEST_CASE("exact rational arithmetic") {
  TestRng rng;
  for (int i = 0; i < 500; ++i) {
    long long a = static_cast<long long>(rng.below(2000000)) - 1000000;
    long long b = 1 + static_cast<long long>(rng.below(1000000));
    long long c = static_cast<long long>(rng.below(2000000)) - 1000000;
    long long d = 1 + static_cast<long long>(rng.below(1000000));
    Rational sum = ratio(a, b) + ratio(c, d);
    // (a/b + c/d) * bd = ad + cb as integers
    CHECK(sum * ratio(b * d) == ratio(a * d + c * b));
  }
  // canonical form: positive denominator, reduced
  Rational r = ratio(4, -6);
  CHECK(numerator(r) == -2);
  CHECK(denominator(r) == 3);
}

TEST_SUITE_END();
