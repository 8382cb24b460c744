#pragma once

#include <cstdint>

#include "ecyc/rational.hpp"

namespace ecyc {

/*
 * Exact densities of curve counts over a fixed prime field F_q.
 *
 * w_tilde(a, b, q) is the density of W(a, b) = {E : E[b](F_q) = Z/a x Z/b}.
 * It is multiplicative in (a, b) simultaneously and is evaluated through its
 * local factors: for a = l^k, b = l^e and v = v_l(q - 1),
 *
 *     w_tilde = 0                                        if k > v,
 *     w_tilde = psi(l^(e-k)) / (l^k phi(l^e) psi(l^e))   otherwise,
 *               times (1 - 1/l) exactly when k < min(e, v).
 *
 * The (1 - 1/l) condition is "l | gcd(b, q-1)/a"; the zero clause reflects
 * that F_q must contain the a-th roots of unity for W(a, b) to be nonempty.
 */
Rational w_tilde(std::uint64_t a, std::uint64_t b, std::uint64_t q);
Rational w_hat(std::uint64_t a, std::uint64_t b, std::uint64_t q);  // q * w_tilde

/*
 * r'_q(m): density of curves over F_q with a point of order m.
 * Multiplicative; for l != p with v = v_l(q-1),
 *   r'(l^n) = 1/(l^n - l^(n-2))                    if v >= n,
 *   r'(l^n) = (l^(2v+1) + 1)/(l^(n+2v-1)(l^2-1))    if v < n,
 * and r'(p^e) = 1/(p^e - p^(e-1)) in the p-torsion case.
 */
Rational r_prime(std::uint64_t q, std::uint64_t m);

// The convolution identity r'_q(m) = sum_{d | m} w_tilde(d, m); requires
// gcd(m, q) = 1. This is the engine behind the fixed-field count.
bool verify_convolution(std::uint64_t q, std::uint64_t m);

/*
 * Density of curves over F_q whose group is cyclic and contains a point of
 * order m:
 *   prod_{l | m, l | q-1} l^(-v_l(m))
 *   prod_{l | m, l !| q-1} 1/phi(l^v_l(m))
 *   prod_{l !| m, l | q-1} (1 - 1/(l(l^2-1))).
 * m = 1 gives the plain cyclicity density. Requires gcd(m, q) = 1.
 */
Rational cyclic_mtors_density(std::uint64_t q, std::uint64_t m);

// q r'_q(m) - sum_{d | m, d > 1} w_hat(d, m)
//           + sum_{t | q-1, t > 1, gcd(t, m) = 1} mu(t) w_hat(t, mt),
// which collapses to q * cyclic_mtors_density(q, m) exactly.
Rational inclusion_exclusion_main_term(std::uint64_t q, std::uint64_t m);

// Family constant C_m: phi(m)/m for two-powers, otherwise
//   phi(m)/(2^k phi(ell0^n)) * (ell0-2)/(ell0-1) + phi(m)/m * 1/(ell0-1).
Rational c_m(std::uint32_t m);

// Truncation of prod_{l !| m} (1 - 1/(l(l-1)(l^2-1))) over primes l <= L,
// with a rigorous bound on |log(true/truncated)|:
//   sum_{l > L} -log(1 - 1/(l(l-1)(l^2-1))) <= sum_{n > L} 2/n^4 <= 2/(3L^3).
struct EulerProductResult {
  long double truncated_value = 1.0L;
  std::uint64_t truncation_bound = 2;
  long double tail_bound = 0.0L;
};

EulerProductResult euler_product(std::uint64_t m, std::uint64_t L);

}  // namespace ecyc
