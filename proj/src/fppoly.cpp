#include "ecyc/fppoly.hpp"

#include <stdexcept>

namespace ecyc {

FpPoly::FpPoly(const PrimeField& F, std::vector<std::uint32_t> coeffs)
    : F_(&F), c_(std::move(coeffs)) {
  normalize();
}

FpPoly FpPoly::constant(const PrimeField& F, std::uint32_t c) {
  return FpPoly(F, {c % F.p()});
}

FpPoly FpPoly::monomial(const PrimeField& F, std::uint32_t c, std::size_t deg) {
  std::vector<std::uint32_t> v(deg + 1, 0);
  v[deg] = c % F.p();
  return FpPoly(F, std::move(v));
}

void FpPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::uint32_t FpPoly::eval(std::uint32_t x) const {
  const PrimeField& F = *F_;
  std::uint32_t r = 0;
  for (std::size_t i = c_.size(); i-- > 0;) r = F.add(F.mul(r, x), c_[i]);
  return r;
}

FpPoly FpPoly::operator+(const FpPoly& o) const {
  const PrimeField& F = *F_;
  std::vector<std::uint32_t> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.add(coeff(i), o.coeff(i));
  return FpPoly(F, std::move(r));
}

FpPoly FpPoly::operator-(const FpPoly& o) const {
  const PrimeField& F = *F_;
  std::vector<std::uint32_t> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.sub(coeff(i), o.coeff(i));
  return FpPoly(F, std::move(r));
}

FpPoly FpPoly::operator*(const FpPoly& o) const {
  const PrimeField& F = *F_;
  if (is_zero() || o.is_zero()) return FpPoly::zero(F);
  const std::uint64_t p = F.p();
  std::vector<std::uint32_t> r(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    std::uint64_t ci = c_[i];
    // accumulate with lazy reduction
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + ci * o.c_[j]) % p);
    }
  }
  return FpPoly(F, std::move(r));
}

FpPoly FpPoly::scaled(std::uint32_t c) const {
  const PrimeField& F = *F_;
  std::vector<std::uint32_t> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = F.mul(c_[i], c);
  return FpPoly(F, std::move(r));
}

FpPoly FpPoly::rem(const FpPoly& m) const {
  if (m.is_zero()) throw std::invalid_argument("FpPoly::rem: zero modulus");
  const PrimeField& F = *F_;
  if (degree() < m.degree()) return *this;
  std::vector<std::uint32_t> r = c_;
  const std::uint32_t lead_inv = F.inv(m.leading());
  const std::size_t dm = static_cast<std::size_t>(m.degree());
  for (std::size_t i = r.size(); i-- > dm;) {
    if (r[i] == 0) continue;
    std::uint32_t q = F.mul(r[i], lead_inv);
    for (std::size_t j = 0; j <= dm; ++j) {
      r[i - dm + j] = F.sub(r[i - dm + j], F.mul(q, m.coeff(j)));
    }
  }
  r.resize(dm);
  return FpPoly(F, std::move(r));
}

FpPoly powmod(const FpPoly& base, std::uint64_t e, const FpPoly& m) {
  const PrimeField& F = base.field();
  FpPoly r = FpPoly::constant(F, 1);
  FpPoly b = base.rem(m);
  while (e) {
    if (e & 1) r = (r * b).rem(m);
    b = (b * b).rem(m);
    e >>= 1;
  }
  return r;
}

FpPoly division_poly(const PrimeField& F, std::uint32_t A, std::uint32_t B, std::uint32_t n) {
  if (n == 0) return FpPoly::zero(F);
  auto C = [&](long long v) { return F.from_int(v); };
  std::uint32_t A2 = F.mul(A, A), A3 = F.mul(A2, A), B2sq = F.mul(B, B), AB = F.mul(A, B);
  std::vector<FpPoly> W;
  W.reserve(n + 1);
  W.push_back(FpPoly::zero(F));           // W_0
  W.push_back(FpPoly::constant(F, 1));    // W_1
  W.push_back(FpPoly::constant(F, 1));    // W_2 (psi_2 = 2y)
  // W_3 = 3x^4 + 6A x^2 + 12B x - A^2
  W.push_back(FpPoly(F, {F.neg(A2), F.mul(C(12), B), F.mul(C(6), A), 0, 3 % F.p()}));
  // W_4 = 2(x^6 + 5A x^4 + 20B x^3 - 5A^2 x^2 - 4AB x - 8B^2 - A^3)
  FpPoly w4(F, {F.neg(F.add(F.mul(C(8), B2sq), A3)), F.neg(F.mul(C(4), AB)),
                F.neg(F.mul(C(5), A2)), F.mul(C(20), B), F.mul(C(5), A), 0, 1});
  W.push_back(w4.scaled(2));

  if (n <= 4) return W[n];

  // f = x^3 + Ax + B; (2y)^4 = 16 f^2 absorbs the even-index y factors
  FpPoly f(F, {B, A, 0, 1});
  FpPoly f2_16 = (f * f).scaled(F.from_int(16));

  for (std::uint32_t j = 5; j <= n; ++j) {
    if (j % 2 == 1) {
      std::uint32_t k = (j - 1) / 2;
      FpPoly t1 = W[k + 2] * W[k] * W[k] * W[k];
      FpPoly t2 = W[k - 1] * W[k + 1] * W[k + 1] * W[k + 1];
      W.push_back(k % 2 == 0 ? f2_16 * t1 - t2 : t1 - f2_16 * t2);
    } else {
      std::uint32_t k = j / 2;
      FpPoly inner = W[k + 2] * W[k - 1] * W[k - 1] - W[k - 2] * W[k + 1] * W[k + 1];
      W.push_back(W[k] * inner);
    }
  }
  return W[n];
}

bool full_odd_torsion(const PrimeField& F, std::uint32_t A, std::uint32_t B, std::uint32_t ell) {
  if (ell % 2 == 0 || !ecyc::is_prime(ell)) {
    throw std::invalid_argument("full_odd_torsion: ell must be an odd prime");
  }
  if (ell == F.p()) throw std::invalid_argument("full_odd_torsion: ell equals p");
  FpPoly W = division_poly(F, A, B, ell);
  // E[ell] rational iff every torsion x-coordinate is rational:
  // x^p = x (mod W_ell)
  FpPoly x = FpPoly::monomial(F, 1, 1);
  return powmod(x, F.p(), W) == x.rem(W);
}

}  // namespace ecyc
