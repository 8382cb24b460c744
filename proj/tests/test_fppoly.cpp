#include <doctest.h>

#include <stdexcept>

#include <set>

#include "ecyc/fppoly.hpp"
#include "test_util.hpp"

using namespace ecyc;

namespace {

// x-coordinates of the affine points killed by ell, found by brute scalar
// multiplication over all points of the curve.
std::set<std::uint32_t> torsion_x_by_brute_force(const WeierstrassCurve& E, std::uint32_t ell) {
  const PrimeField& F = E.field();
  std::set<std::uint32_t> xs;
  for (std::uint32_t x = 0; x < F.p(); ++x) {
    for (std::uint32_t y = 0; y < F.p(); ++y) {
      CurvePoint P = CurvePoint::affine(x, y);
      if (!E.contains(P)) continue;
      if (E.scalar_raw(ell, P).infinity) xs.insert(x);
    }
  }
  return xs;
}

}  // namespace

TEST_SUITE_BEGIN("fppoly");

TEST_CASE("polynomial ring basics") {
  PrimeField F(13);
  FpPoly a(F, {1, 2, 3});       // 3x^2 + 2x + 1
  FpPoly b(F, {12, 0, 0, 1});   // x^3 + 12
  CHECK((a + b).degree() == 3);
  CHECK((a * b).degree() == 5);
  CHECK((a - a).is_zero());
  CHECK(a.eval(2) == (3 * 4 + 2 * 2 + 1) % 13);
  // remainder: x^3 + 12 mod (x - 1) evaluates the polynomial at 1
  FpPoly lin(F, {12, 1});  // x - 1
  CHECK(b.rem(lin).coeff(0) == b.eval(1));
  CHECK_THROWS_AS(a.rem(FpPoly::zero(F)), std::invalid_argument);
}

TEST_CASE("powmod matches repeated multiplication") {
  PrimeField F(17);
  FpPoly x = FpPoly::monomial(F, 1, 1);
  FpPoly m(F, {3, 1, 0, 0, 1});  // x^4 + x + 3
  FpPoly direct = FpPoly::constant(F, 1);
  for (int i = 0; i < 23; ++i) direct = (direct * x).rem(m);
  CHECK(powmod(x, 23, m) == direct);
}

TEST_CASE("division polynomial degrees and psi_3 coefficients") {
  PrimeField F(101);
  std::uint32_t A = 7, B = 11;
  for (std::uint32_t n = 1; n <= 13; ++n) {
    FpPoly W = division_poly(F, A, B, n);
    int expected = n % 2 == 1 ? (static_cast<int>(n) * static_cast<int>(n) - 1) / 2
                              : (static_cast<int>(n) * static_cast<int>(n) - 4) / 2;
    CHECK(W.degree() == expected);
  }
  FpPoly W3 = division_poly(F, A, B, 3);
  CHECK(W3.coeff(4) == 3);
  CHECK(W3.coeff(2) == F.mul(6, A));
  CHECK(W3.coeff(1) == F.mul(12, B));
  CHECK(W3.coeff(0) == F.neg(F.mul(A, A)));
}

TEST_CASE("division polynomial roots are the torsion x-coordinates") {
  TestRng rng(7);
  for (std::uint32_t p : {11u, 13u, 17u, 19u, 23u}) {
    PrimeField F(p);
    int tested = 0;
    while (tested < 6) {
      std::uint32_t A = static_cast<std::uint32_t>(rng.below(p));
      std::uint32_t B = static_cast<std::uint32_t>(rng.below(p));
      WeierstrassCurve E = WeierstrassCurve::short_form(F, A, B);
      if (E.is_singular()) continue;
      ++tested;
      for (std::uint32_t ell : {3u, 5u}) {
        FpPoly W = division_poly(F, A, B, ell);
        // roots of W_ell are torsion x-coordinates over the closure; the
        // points are rational exactly when f(x) is a square
        std::set<std::uint32_t> rational_roots;
        int all_roots = 0;
        for (std::uint32_t x = 0; x < p; ++x) {
          if (W.eval(x) != 0) continue;
          ++all_roots;
          std::uint32_t fx = F.add(F.mul(F.mul(x, x), x), F.add(F.mul(A, x), B));
          if (F.chi(fx) >= 0) rational_roots.insert(x);
        }
        CHECK(all_roots <= static_cast<int>((ell * ell - 1) / 2));
        CHECK(rational_roots == torsion_x_by_brute_force(E, ell));
      }
    }
  }
}

TEST_CASE("full odd torsion agrees with the group structure") {
  for (std::uint32_t p : {7u, 13u, 19u, 31u, 37u, 43u}) {
    PrimeField F(p);
    for (std::uint32_t A = 0; A < p; ++A) {
      for (std::uint32_t B = 0; B < p; ++B) {
        WeierstrassCurve E = WeierstrassCurve::short_form(F, A, B);
        if (E.is_singular()) continue;
        GroupShape s = E.group_structure();
        if ((p - 1) % 3 == 0 && s.N % 3 == 0) {
          CHECK(full_odd_torsion(F, A, B, 3) == (s.n2 % 3 == 0));
        }
        if ((p - 1) % 5 == 0 && s.N % 5 == 0) {
          CHECK(full_odd_torsion(F, A, B, 5) == (s.n2 % 5 == 0));
        }
      }
    }
  }
}

TEST_SUITE_END();
