#pragma once

#include <cstdint>
#include <vector>

#include "ecyc/finite_curves.hpp"

namespace ecyc {

// Dense univariate polynomial over F_p, coefficients in ascending degree,
// no trailing zeros. Schoolbook multiplication is plenty at the degrees
// used here (division polynomials of index <= ~100).
class FpPoly {
 public:
  FpPoly() = default;
  FpPoly(const PrimeField& F, std::vector<std::uint32_t> coeffs);
  static FpPoly zero(const PrimeField& F) { return FpPoly(F, {}); }
  static FpPoly constant(const PrimeField& F, std::uint32_t c);
  static FpPoly monomial(const PrimeField& F, std::uint32_t c, std::size_t deg);

  const PrimeField& field() const { return *F_; }
  bool is_zero() const { return c_.empty(); }
  // degree of the zero polynomial is reported as -1
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  std::uint32_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  std::uint32_t leading() const { return c_.empty() ? 0 : c_.back(); }
  const std::vector<std::uint32_t>& coeffs() const { return c_; }

  std::uint32_t eval(std::uint32_t x) const;

  FpPoly operator+(const FpPoly& o) const;
  FpPoly operator-(const FpPoly& o) const;
  FpPoly operator*(const FpPoly& o) const;
  FpPoly scaled(std::uint32_t c) const;

  // Remainder of this modulo m (m nonzero).
  FpPoly rem(const FpPoly& m) const;

  bool operator==(const FpPoly& o) const { return c_ == o.c_; }

 private:
  void normalize();
  const PrimeField* F_ = nullptr;
  std::vector<std::uint32_t> c_;
};

// x^(p^k)-style exponentiation: base^e mod m by square and multiply.
FpPoly powmod(const FpPoly& base, std::uint64_t e, const FpPoly& m);

// Division polynomial of y^2 = x^3 + Ax + B with y factored out:
// psi_n = W_n(x) for odd n, psi_n = 2y W_n(x) for even n.
// deg W_n = (n^2-1)/2 for odd n and (n^2-4)/2 for even n.
FpPoly division_poly(const PrimeField& F, std::uint32_t A, std::uint32_t B, std::uint32_t n);

// For an odd prime ell with ell | #E(F_p) and ell != p: E[ell] is rational
// iff W_ell splits into linear factors, tested as x^p = x (mod W_ell).
bool full_odd_torsion(const PrimeField& F, std::uint32_t A, std::uint32_t B, std::uint32_t ell);

}  // namespace ecyc
