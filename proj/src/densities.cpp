#include "ecyc/densities.hpp"

#include <numeric>
#include <stdexcept>

#include "ecyc/numtheory.hpp"

namespace ecyc {

namespace {

void require_prime(std::uint64_t q) {
  if (!is_prime(q)) throw std::invalid_argument("densities: q must be prime");
}

BigInt big_pow(std::uint64_t base, int e) {
  BigInt b(static_cast<unsigned long>(base)), r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

}  // namespace

Rational w_tilde(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  require_prime(q);
  if (a == 0 || b == 0 || b % a != 0) {
    throw std::invalid_argument("w_tilde: need positive a | b");
  }
  Rational r(1);
  for (const auto& [l, e] : factorize(b).factors) {
    int k = 0;
    for (std::uint64_t t = a; t % l == 0; t /= l) ++k;
    int v = (q - 1) % l == 0 ? padic_valuation(l, q - 1) : 0;
    if (k > v) return Rational(0);  // F_q lacks the l^k-th roots of unity
    // psi(l^(e-k)) / (l^k phi(l^e) psi(l^e))
    BigInt num = (e - k == 0) ? BigInt(1) : big_pow(l, e - k - 1) * (l + 1);
    BigInt den = big_pow(l, k) * (big_pow(l, e - 1) * (l - 1)) * (big_pow(l, e - 1) * (l + 1));
    Rational local = ratio(num, den);
    if (k < std::min(e, v)) local *= ratio(l - 1, l);
    r *= local;
  }
  return r;
}

Rational w_hat(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  return ratio(static_cast<long long>(q)) * w_tilde(a, b, q);
}

Rational r_prime(std::uint64_t q, std::uint64_t m) {
  require_prime(q);
  if (m == 0) throw std::invalid_argument("r_prime: m must be positive");
  Rational r(1);
  for (const auto& [l, n] : factorize(m).factors) {
    if (l == q) {
      // p-torsion case: 1/(p^e - p^(e-1))
      r *= ratio(BigInt(1), big_pow(l, n) - big_pow(l, n - 1));
      continue;
    }
    int v = (q - 1) % l == 0 ? padic_valuation(l, q - 1) : 0;
    if (v >= n) {
      // 1/(l^n - l^(n-2)); the exponent n-2 may be negative
      Rational den = rational_pow(l, n) - rational_pow(l, n - 2);
      r *= Rational(1) / den;
    } else {
      BigInt num = big_pow(l, 2 * v + 1) + 1;
      BigInt den = big_pow(l, n + 2 * v - 1) * (big_pow(l, 2) - 1);
      r *= ratio(num, den);
    }
  }
  return r;
}

bool verify_convolution(std::uint64_t q, std::uint64_t m) {
  require_prime(q);
  if (m == 0 || m % q == 0) throw std::invalid_argument("verify_convolution: need gcd(m, q) = 1");
  Rational sum(0);
  for (std::uint64_t d : divisors(factorize(m))) sum += w_tilde(d, m, q);
  return sum == r_prime(q, m);
}

Rational cyclic_mtors_density(std::uint64_t q, std::uint64_t m) {
  require_prime(q);
  if (m == 0 || m % q == 0) {
    throw std::invalid_argument("cyclic_mtors_density: need gcd(m, q) = 1");
  }
  Rational r(1);
  for (const auto& [l, e] : factorize(m).factors) {
    if ((q - 1) % l == 0) {
      r *= rational_pow(l, -e);
    } else {
      r *= ratio(BigInt(1), big_pow(l, e - 1) * (l - 1));  // 1/phi(l^e)
    }
  }
  for (const auto& [l, e] : factorize(q - 1).factors) {
    (void)e;
    if (m % l == 0) continue;
    long long den = static_cast<long long>(l) * (l * l - 1);
    r *= ratio(den - 1, den);
  }
  return r;
}

Rational inclusion_exclusion_main_term(std::uint64_t q, std::uint64_t m) {
  require_prime(q);
  if (m == 0 || m % q == 0) {
    throw std::invalid_argument("inclusion_exclusion_main_term: need gcd(m, q) = 1");
  }
  Rational total = ratio(static_cast<long long>(q)) * r_prime(q, m);
  for (std::uint64_t d : divisors(factorize(m))) {
    if (d > 1) total -= w_hat(d, m, q);
  }
  // Moebius sum over squarefree t | q-1 prime to m; the t = 1 term is the
  // r' - sum collapse above, so the sum starts at t = 2.
  for (std::uint64_t t : divisors(factorize(q - 1))) {
    if (t == 1 || std::gcd(t, m) != 1) continue;
    int mu = moebius(factorize(t));
    if (mu == 0) continue;
    Rational term = w_hat(t, m * t, q);
    total += (mu > 0) ? term : -term;
  }
  return total;
}

Rational c_m(std::uint32_t m) {
  static const std::uint32_t allowed[] = {4, 5, 6, 7, 8, 9, 10, 12};
  bool ok = false;
  for (std::uint32_t x : allowed) ok = ok || (x == m);
  if (!ok) throw std::invalid_argument("c_m: m must be one of {4,5,6,7,8,9,10,12}");

  std::uint32_t k = 0, rest = m;
  while (rest % 2 == 0) {
    rest /= 2;
    ++k;
  }
  std::uint64_t phi_m = euler_phi(static_cast<std::uint64_t>(m));
  if (rest == 1) return ratio(phi_m, m);  // two-power families
  std::uint64_t ell0 = (rest % 3 == 0) ? 3 : (rest % 5 == 0) ? 5 : 7;
  std::uint64_t phi_rest = euler_phi(static_cast<std::uint64_t>(rest));
  return ratio(phi_m, (1ull << k) * phi_rest) * ratio(ell0 - 2, ell0 - 1) +
         ratio(phi_m, m) * ratio(1, ell0 - 1);
}

EulerProductResult euler_product(std::uint64_t m, std::uint64_t L) {
  if (L < 2) throw std::invalid_argument("euler_product: L must be >= 2");
  if (m == 0) throw std::invalid_argument("euler_product: m must be positive");
  EulerProductResult out;
  out.truncation_bound = L;
  long double prod = 1.0L;
  for (std::uint32_t l : primes_up_to(static_cast<std::uint32_t>(L))) {
    if (m % l == 0) continue;
    long double ld = static_cast<long double>(l);
    prod *= 1.0L - 1.0L / (ld * (ld - 1.0L) * (ld * ld - 1.0L));
  }
  out.truncated_value = prod;
  long double Ld = static_cast<long double>(L);
  out.tail_bound = 2.0L / (3.0L * Ld * Ld * Ld);
  return out;
}

}  // namespace ecyc
