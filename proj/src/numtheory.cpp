#include "ecyc/numtheory.hpp"

#include <algorithm>
#include <stdexcept>

namespace ecyc {

namespace {

// Shared trial-division table. 2^16 covers square roots of everything this
// project factors (inputs stay below ~10^7; the table allows up to 2^32).
const std::vector<std::uint32_t>& trial_primes() {
  static const std::vector<std::uint32_t> table = primes_up_to(1u << 16);
  return table;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ull, 3ull, 5ull}) {
    if (n % d == 0) return n == d;
  }
  // wheel mod 30
  static const int wheel[8] = {1, 7, 11, 13, 17, 19, 23, 29};
  for (std::uint64_t base = 0;; base += 30) {
    for (int w : wheel) {
      std::uint64_t d = base + w;
      if (d < 7) continue;
      if (d * d > n) return true;
      if (n % d == 0) return false;
    }
  }
}

FactoredInt factorize(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  FactoredInt out;
  out.value = n;
  for (std::uint32_t p : trial_primes()) {
    if (std::uint64_t(p) * p > n) break;
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.factors.emplace_back(p, e);
    }
  }
  if (n > 1) {
    if (!is_prime(n)) throw std::invalid_argument("factorize: input beyond trial-division range");
    out.factors.emplace_back(n, 1);
  }
  return out;
}

std::uint64_t euler_phi(const FactoredInt& n) {
  std::uint64_t r = n.value;
  for (const auto& [p, e] : n.factors) {
    (void)e;
    r = r / p * (p - 1);
  }
  return r;
}

std::uint64_t euler_phi(std::uint64_t n) { return euler_phi(factorize(n)); }

std::uint64_t psi(const FactoredInt& n) {
  std::uint64_t r = n.value;
  for (const auto& [p, e] : n.factors) {
    (void)e;
    r = r / p * (p + 1);
  }
  return r;
}

std::uint64_t psi(std::uint64_t n) { return psi(factorize(n)); }

int moebius(const FactoredInt& n) {
  for (const auto& [p, e] : n.factors) {
    (void)p;
    if (e >= 2) return 0;
  }
  return n.factors.size() % 2 == 0 ? 1 : -1;
}

int moebius(std::uint64_t n) { return moebius(factorize(n)); }

int padic_valuation(std::uint64_t ell, std::uint64_t n) {
  if (!is_prime(ell)) throw std::invalid_argument("padic_valuation: ell must be prime");
  if (n == 0) throw std::invalid_argument("padic_valuation: n must be positive");
  int v = 0;
  while (n % ell == 0) {
    n /= ell;
    ++v;
  }
  return v;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t x) {
  if (x < 2) throw std::invalid_argument("primes_up_to: x must be >= 2");
  std::vector<bool> composite(x + 1, false);
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 2; i <= x; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = std::uint64_t(i) * i; j <= x; j += i) composite[j] = true;
  }
  return out;
}

std::uint64_t prime_pi(std::uint32_t x) { return primes_up_to(x).size(); }

std::vector<std::uint64_t> divisors(const FactoredInt& n) {
  std::vector<std::uint64_t> out{1};
  for (const auto& [p, e] : n.factors) {
    std::size_t sz = out.size();
    std::uint64_t pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < sz; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

SpfSieve::SpfSieve(std::uint32_t limit) : limit_(limit), spf_(limit + 1, 0) {
  for (std::uint32_t i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      for (std::uint64_t j = i; j <= limit; j += i) {
        if (spf_[j] == 0) spf_[j] = i;
      }
    }
  }
}

FactoredInt SpfSieve::factor(std::uint32_t n) const {
  if (n == 0) throw std::invalid_argument("SpfSieve::factor: n must be positive");
  if (n > limit_) throw std::invalid_argument("SpfSieve::factor: n above sieve limit");
  FactoredInt out;
  out.value = n;
  while (n > 1) {
    std::uint32_t p = spf_[n];
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.factors.emplace_back(p, e);
  }
  return out;
}

}  // namespace ecyc
