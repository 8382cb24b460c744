#include "ecyc/averaging.hpp"

#include <cmath>
#include <stdexcept>

#include "ecyc/densities.hpp"
#include "ecyc/families.hpp"
#include "ecyc/parallel.hpp"

namespace ecyc {

namespace {

std::uint32_t sieve_limit_for(std::uint32_t x) {
  std::uint32_t r = static_cast<std::uint32_t>(std::sqrt(static_cast<double>(x)));
  return x + 2 * r + 4;  // covers N <= p + 1 + 2 sqrt(p)
}

long double local_mean_factor(std::uint64_t l) {
  long double ld = static_cast<long double>(l);
  return 1.0L - 1.0L / (ld * (ld * ld - 1.0L));
}

}  // namespace

MultiplicativeSpec MultiplicativeSpec::forF(std::uint32_t m) {
  MultiplicativeSpec s;
  s.kind = Kind::F;
  s.m = m;
  s.ell0 = 1;
  return s;
}

MultiplicativeSpec MultiplicativeSpec::forFPrime(std::uint32_t m) {
  TorsionLabel label = TorsionLabel::of(m);
  if (label.is_two_power()) {
    throw std::invalid_argument("MultiplicativeSpec: F' needs an odd prime factor");
  }
  MultiplicativeSpec s;
  s.kind = Kind::FPrime;
  s.m = m;
  s.ell0 = label.ell0;
  return s;
}

MultiplicativeSpec MultiplicativeSpec::forChi(std::uint32_t ell0) {
  if (!is_prime(ell0) || ell0 == 2) {
    throw std::invalid_argument("MultiplicativeSpec: chi needs an odd prime");
  }
  MultiplicativeSpec s;
  s.kind = Kind::Chi;
  s.m = 1;
  s.ell0 = ell0;
  return s;
}

long double MultiplicativeSpec::eval(const FactoredInt& n) const {
  long double r = 1.0L;
  for (const auto& [l, e] : n.factors) {
    (void)e;
    if (kind != Kind::F && l == ell0) return 0.0L;
    if (kind != Kind::Chi && m % l != 0) r *= local_mean_factor(l);
  }
  return kind == Kind::Chi ? 1.0L : r;
}

long double MultiplicativeSpec::predicted_limit(std::uint64_t truncation) const {
  // limits of (1/pi(x)) sum spec(p-1): Euler products of the Moebius
  // convolutions, with the chi factor contributing (ell0-2)/(ell0-1)
  long double chi_factor =
      (kind == Kind::F) ? 1.0L
                        : static_cast<long double>(ell0 - 2) / static_cast<long double>(ell0 - 1);
  if (kind == Kind::Chi) return chi_factor;
  return chi_factor * euler_product(m, truncation).truncated_value;
}

MeanValueResult mean_over_shifted_primes(const MultiplicativeSpec& spec, std::uint32_t x,
                                         const SpfSieve& spf) {
  if (x < 2 || x > spf.limit()) {
    throw std::invalid_argument("mean_over_shifted_primes: x out of sieve range");
  }
  MeanValueResult out;
  out.x = x;
  long double sum = 0.0L;
  for (std::uint32_t n = 2; n <= x; ++n) {
    if (!spf.is_prime(n)) continue;
    ++out.prime_count;
    sum += spec.eval(spf.factor(n - 1));
  }
  out.measured = sum / static_cast<long double>(out.prime_count);
  out.predicted = spec.predicted_limit();
  return out;
}

std::uint64_t pi_cyc(std::uint32_t m, long long a, std::uint32_t x) {
  GlobalFamilyCurve g = global_family(m, a);  // throws on invalid parameters
  if (x < 5) return 0;
  SpfSieve spf(sieve_limit_for(x));
  std::uint64_t count = 0;
  for (std::uint32_t p : primes_up_to(x)) {
    if (p < 5 || g.is_bad_prime(p)) continue;
    PrimeField F(p);
    FamilyCurve fc = family_curve(m, F.from_int(a), F);
    if (fc.validity != ParamValidity::valid) {
      throw std::logic_error("pi_cyc: good prime reduced to an invalid parameter");
    }
    if (curve_is_cyclic(*fc.curve, spf)) ++count;
  }
  return count;
}

double predicted_main_term(std::uint32_t m, std::uint32_t x, std::uint64_t truncation) {
  double coef = to_double(c_m(m)) *
                static_cast<double>(euler_product(m, truncation).truncated_value);
  return coef * static_cast<double>(prime_pi(x));
}

AverageReport average_density(std::uint32_t m, std::uint32_t x, unsigned workers) {
  TorsionLabel::of(m);  // validate m
  if (x < 5) throw std::invalid_argument("average_density: x must be >= 5");
  AverageReport rep;
  rep.m = m;
  rep.x = x;
  rep.mode = AverageMode::density;

  const std::vector<std::uint32_t> primes = primes_up_to(x);
  const SpfSieve spf(sieve_limit_for(x));

  struct Chunk {
    std::vector<PerPrimeRow> rows;
  };
  auto chunks = par::map_chunks<Chunk>(
      0, primes.size(), /*chunk=*/4, workers, [&](std::size_t lo, std::size_t hi) {
        Chunk c;
        for (std::size_t i = lo; i < hi; ++i) {
          std::uint32_t p = primes[i];
          if (p < 5) continue;
          PrimeField F(p);
          FamilyCyclicCount fc = family_cyclic_count(m, F, spf);
          PerPrimeRow row;
          row.p = p;
          row.valid_count = fc.valid;
          row.cyclic_count = fc.cyclic;
          row.density = static_cast<double>(fc.cyclic) / p;
          c.rows.push_back(row);
        }
        return c;
      });

  EulerProductResult ep = euler_product(m, 1000000);
  const double coef = to_double(c_m(m)) * static_cast<double>(ep.truncated_value);
  double cum = 0.0;
  std::uint64_t prime_index = 0;  // pi(p) over all primes, including 2 and 3
  std::size_t scanned = 0;
  for (auto& c : chunks) {
    for (auto& row : c.rows) {
      while (scanned < primes.size() && primes[scanned] <= row.p) {
        ++scanned;
        ++prime_index;
      }
      cum += static_cast<double>(row.cyclic_count) / row.p;
      row.cum_measured = cum;
      row.cum_predicted = coef * static_cast<double>(prime_index);
      row.rel_error = row.cum_predicted != 0.0
                          ? std::abs(row.cum_measured - row.cum_predicted) / row.cum_predicted
                          : 0.0;
      rep.rows.push_back(row);
    }
  }
  rep.measured = cum;
  rep.predicted = coef * static_cast<double>(primes.size());
  rep.relative_error = std::abs(rep.measured - rep.predicted) / rep.predicted;
  rep.predicted_tail_bound = rep.predicted * static_cast<double>(ep.tail_bound);
  return rep;
}

AverageReport average_direct(std::uint32_t m, std::uint64_t A, std::uint32_t x,
                             unsigned workers) {
  TorsionLabel::of(m);
  if (A < 1 || x < 5) throw std::invalid_argument("average_direct: need A >= 1, x >= 5");
  AverageReport rep;
  rep.m = m;
  rep.x = x;
  rep.mode = AverageMode::direct;
  rep.A = A;
  rep.regime_warning = (A <= x);

  // Screen the global parameters once; the sum runs over nonsingular ones.
  const FamilySpec& fam = FamilySpec::get(m);
  const long long Al = static_cast<long long>(A);
  struct ParamInfo {
    bool valid = false;
    BigInt num_disc;     // product of positive-exponent factor values
    BigInt den_product;  // product of coefficient denominators
  };
  std::vector<ParamInfo> params(2 * A + 1);
  for (long long a = -Al; a <= Al; ++a) {
    ParamInfo& pi = params[static_cast<std::size_t>(a + Al)];
    BigInt av(static_cast<long>(a));
    BigInt den1 = fam.a1.den.eval(av), den3 = fam.a3.den.eval(av);
    if (den1 == 0 || den3 == 0) continue;
    pi.den_product = abs(den1 * den3);
    pi.num_disc = 1;
    bool ok = true;
    for (const auto& [poly, e] : fam.disc_factors) {
      BigInt v = poly.eval(av);
      if (v == 0) {
        ok = false;
        break;
      }
      if (e > 0) {
        BigInt pw;
        mpz_pow_ui(pw.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(e));
        pi.num_disc *= pw;
      }
    }
    pi.valid = ok;
  }
  std::uint64_t param_count = 0;
  for (const auto& pi : params) param_count += pi.valid ? 1 : 0;
  rep.parameters = param_count;

  const std::vector<std::uint32_t> primes = primes_up_to(x);
  const SpfSieve spf(sieve_limit_for(x));

  struct Chunk {
    std::vector<PerPrimeRow> rows;
  };
  auto chunks = par::map_chunks<Chunk>(
      0, primes.size(), /*chunk=*/4, workers, [&](std::size_t lo, std::size_t hi) {
        Chunk c;
        for (std::size_t i = lo; i < hi; ++i) {
          std::uint32_t p = primes[i];
          if (p < 5) continue;
          PrimeField F(p);
          // per-residue cyclicity table: 0 invalid, 1 valid, 2 valid+cyclic
          std::vector<std::uint8_t> state(p, 0);
          for (std::uint32_t b = 0; b < p; ++b) {
            FamilyCurve fc = family_curve(m, b, F);
            if (fc.validity != ParamValidity::valid) continue;
            state[b] = curve_is_cyclic(*fc.curve, spf) ? 2 : 1;
          }
          PerPrimeRow row;
          row.p = p;
          for (long long a = -Al; a <= Al; ++a) {
            const ParamInfo& pi = params[static_cast<std::size_t>(a + Al)];
            if (!pi.valid) continue;
            if (mpz_divisible_ui_p(pi.den_product.get_mpz_t(), p)) continue;
            if (mpz_divisible_ui_p(pi.num_disc.get_mpz_t(), p)) continue;
            std::uint32_t b = F.from_int(a);
            ++row.valid_count;
            row.cyclic_count += (state[b] == 2) ? 1 : 0;
          }
          row.density =
              row.valid_count ? static_cast<double>(row.cyclic_count) / row.valid_count : 0.0;
          c.rows.push_back(row);
        }
        return c;
      });

  EulerProductResult ep = euler_product(m, 1000000);
  const double coef = to_double(c_m(m)) * static_cast<double>(ep.truncated_value);
  double cum = 0.0;
  std::uint64_t prime_index = 0;
  std::size_t scanned = 0;
  for (auto& c : chunks) {
    for (auto& row : c.rows) {
      while (scanned < primes.size() && primes[scanned] <= row.p) {
        ++scanned;
        ++prime_index;
      }
      cum += static_cast<double>(row.cyclic_count) / static_cast<double>(param_count);
      row.cum_measured = cum;
      row.cum_predicted = coef * static_cast<double>(prime_index);
      row.rel_error = row.cum_predicted != 0.0
                          ? std::abs(row.cum_measured - row.cum_predicted) / row.cum_predicted
                          : 0.0;
      rep.rows.push_back(row);
    }
  }
  rep.measured = cum;
  rep.predicted = coef * static_cast<double>(primes.size());
  rep.relative_error = std::abs(rep.measured - rep.predicted) / rep.predicted;
  rep.predicted_tail_bound = rep.predicted * static_cast<double>(ep.tail_bound);
  return rep;
}

}  // namespace ecyc
