#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numeric>

#include "ecyc/densities.hpp"
#include "ecyc/numtheory.hpp"
#include "test_util.hpp"

using namespace ecyc;

TEST_SUITE_BEGIN("densities");

TEST_CASE("w_tilde values") {
  CHECK(w_tilde(1, 1, 11) == ratio(1));
  CHECK(w_tilde(1, 5, 11) == ratio(1, 5));
  CHECK(w_tilde(5, 5, 11) == ratio(1, 120));
  CHECK(w_tilde(4, 4, 7) == ratio(0));   // 4 does not divide gcd(4, 6)
  CHECK(w_tilde(1, 5, 7) == ratio(1, 4));
  CHECK(w_tilde(2, 2, 5) == ratio(1, 6));
  CHECK(w_hat(1, 5, 11) == ratio(11, 5));
  CHECK_THROWS_AS(w_tilde(2, 5, 11), std::invalid_argument);
  CHECK_THROWS_AS(w_tilde(1, 5, 10), std::invalid_argument);
}

TEST_CASE("w_tilde is multiplicative in both arguments") {
  TestRng rng(23);
  const std::uint64_t q = 211;
  int done = 0;
  while (done < 200) {
    std::uint64_t b1 = 1 + rng.below(40), b2 = 1 + rng.below(40);
    if (std::gcd(b1, b2) != 1 || b1 % q == 0 || b2 % q == 0) continue;
    // pick a_i | b_i
    auto d1 = divisors(factorize(b1)), d2 = divisors(factorize(b2));
    std::uint64_t a1 = d1[rng.below(d1.size())], a2 = d2[rng.below(d2.size())];
    ++done;
    CHECK(w_tilde(a1 * a2, b1 * b2, q) == w_tilde(a1, b1, q) * w_tilde(a2, b2, q));
  }
}

TEST_CASE("r_prime values") {
  CHECK(r_prime(11, 1) == ratio(1));
  CHECK(r_prime(7, 5) == ratio(1, 4));
  CHECK(r_prime(11, 5) == ratio(5, 24));
  CHECK(r_prime(5, 5) == ratio(1, 4));  // p-torsion case: 1/(5 - 1)
  CHECK(r_prime(7, 4) == ratio(3, 8));
}

TEST_CASE("convolution identity examples") {
  CHECK(verify_convolution(11, 1));
  CHECK(verify_convolution(11, 5));
  CHECK(verify_convolution(7, 5));
  CHECK(w_tilde(1, 5, 11) + w_tilde(5, 5, 11) == ratio(5, 24));
}

TEST_CASE("convolution identity sweep") {
  for (std::uint32_t q : primes_up_to(100)) {
    if (q < 5) continue;
    for (std::uint64_t m = 1; m <= 30; ++m) {
      if (m % q == 0) continue;
      CHECK(verify_convolution(q, m));
    }
  }
}

TEST_CASE("cyclic m-torsion density") {
  CHECK(cyclic_mtors_density(11, 5) == ratio(1, 6));
  CHECK(cyclic_mtors_density(7, 5) == ratio(115, 576));
  // m = 1: the plain cyclicity density prod_{l | q-1} (1 - 1/(l(l^2-1)))
  CHECK(cyclic_mtors_density(7, 1) == ratio(5, 6) * ratio(23, 24));
  CHECK_THROWS_AS(cyclic_mtors_density(5, 10), std::invalid_argument);
  // densities live in [0, 1]
  for (std::uint32_t q : primes_up_to(100)) {
    if (q < 5) continue;
    for (std::uint64_t m = 1; m <= 20; ++m) {
      if (m % q == 0) continue;
      Rational d = cyclic_mtors_density(q, m);
      CHECK(d >= 0);
      CHECK(d <= 1);
      Rational r = r_prime(q, m);
      CHECK(r >= 0);
      CHECK(r <= 1);
    }
  }
}

TEST_CASE("inclusion-exclusion main term collapses to q times the density") {
  CHECK(inclusion_exclusion_main_term(11, 5) == ratio(11, 6));
  CHECK(inclusion_exclusion_main_term(7, 1) == ratio(7) * ratio(5, 6) * ratio(23, 24));
  for (std::uint32_t q : primes_up_to(200)) {
    if (q < 5) continue;
    for (std::uint64_t m = 1; m <= 12; ++m) {
      if (m % q == 0) continue;
      CHECK(inclusion_exclusion_main_term(q, m) == ratio(q) * cyclic_mtors_density(q, m));
    }
  }
}

TEST_CASE("family constants match the published table") {
  CHECK(c_m(4) == ratio(1, 2));
  CHECK(c_m(5) == ratio(19, 20));
  CHECK(c_m(6) == ratio(5, 12));
  CHECK(c_m(7) == ratio(41, 42));
  CHECK(c_m(8) == ratio(1, 2));
  CHECK(c_m(9) == ratio(5, 6));
  CHECK(c_m(10) == ratio(19, 40));
  CHECK(c_m(12) == ratio(5, 12));
  CHECK_THROWS_AS(c_m(11), std::invalid_argument);
  CHECK_THROWS_AS(c_m(1), std::invalid_argument);
}

TEST_CASE("w_tilde mass per torsion level stays below one (reported)") {
  // sum over a | b of w_tilde(a, b, q) is the density of curves whose
  // b-torsion contains a point of order b; the complement is curves with
  // smaller torsion at b, so the sum must stay below 1
  for (std::uint64_t q : {11ull, 97ull, 211ull}) {
    for (std::uint64_t b = 1; b <= 12; ++b) {
      Rational mass(0);
      for (std::uint64_t a : divisors(factorize(b))) mass += w_tilde(a, b, q);
      CHECK(mass <= 1);
      CHECK(mass > 0);
      MESSAGE("q=", q, " b=", b, " torsion mass ", to_string(mass));
    }
  }
}

TEST_CASE("euler products and tail bounds") {
  EulerProductResult one = euler_product(1, 2);
  CHECK(one.truncated_value == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
  // excluding l = 2 for even m removes the 5/6 factor
  EulerProductResult two = euler_product(2, 2);
  CHECK(two.truncated_value == doctest::Approx(1.0));
  // the full product to 10^6, compared against an independently computed
  // reference value (truncation tail is below 1e-18)
  EulerProductResult full = euler_product(1, 1000000);
  CHECK(std::abs(static_cast<double>(full.truncated_value) - 0.813751906106816) < 1e-9);
  CHECK(full.tail_bound < 1e-17);
  CHECK(full.tail_bound >= 0);
  // the tail bound dominates the next omitted factor
  EulerProductResult trunc = euler_product(1, 100);
  long double next = 101.0L * 100.0L * (101.0L * 101.0L - 1.0L);
  CHECK(trunc.tail_bound > 1.0L / next);
  CHECK_THROWS_AS(euler_product(1, 1), std::invalid_argument);
}

TEST_SUITE_END();
