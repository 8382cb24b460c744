#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ecyc/numtheory.hpp"

namespace ecyc {

// Prime field F_p for p > 3. Elements are canonical residues in [0, p).
// The quadratic character and a square-root table are precomputed once per
// field; they are the hot path of every point-counting sweep.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p);

  PrimeField(const PrimeField&) = delete;
  PrimeField& operator=(const PrimeField&) = delete;
  PrimeField(PrimeField&&) = default;
  PrimeField& operator=(PrimeField&&) = default;

  std::uint32_t p() const { return p_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return a >= b ? a - b : a + p_ - b;
  }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(std::uint64_t(a) * b % p_);
  }
  std::uint32_t inv(std::uint32_t a) const;  // throws on a = 0
  std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;

  // Reduce an arbitrary signed integer.
  std::uint32_t from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
  }

  // Quadratic character: 0 on 0, +1 on nonzero squares, -1 otherwise.
  int chi(std::uint32_t a) const { return chi_[a]; }
  const std::int8_t* chi_table() const { return chi_.data(); }

  // Smallest square root when chi(a) >= 0.
  std::optional<std::uint32_t> sqrt(std::uint32_t a) const {
    if (chi_[a] < 0) return std::nullopt;
    return sqrt_[a];
  }

 private:
  std::uint32_t p_;
  std::vector<std::int8_t> chi_;
  std::vector<std::uint32_t> sqrt_;
};

// Affine point or the point at infinity.
struct CurvePoint {
  std::uint32_t x = 0;
  std::uint32_t y = 0;
  bool infinity = true;

  static CurvePoint at_infinity() { return CurvePoint{}; }
  static CurvePoint affine(std::uint32_t x, std::uint32_t y) { return CurvePoint{x, y, false}; }

  bool operator==(const CurvePoint& o) const {
    if (infinity || o.infinity) return infinity == o.infinity;
    return x == o.x && y == o.y;
  }
};

// Group structure E(F_p) = Z/n1 x Z/n2 with n2 | n1, plus the point count
// and the Frobenius trace. Constructed through make(), which checks
// n2 | n1, n1 n2 = N, n2 | p - 1 and the Hasse bound.
struct GroupShape {
  std::uint64_t N = 1;
  std::uint64_t n1 = 1;
  std::uint64_t n2 = 1;
  long long trace = 0;
  std::uint32_t p = 0;

  static GroupShape make(std::uint32_t p, std::uint64_t N, std::uint64_t n1);
};

inline bool is_cyclic(const GroupShape& s) { return s.n2 == 1; }
inline bool has_point_of_order(const GroupShape& s, std::uint64_t m) { return s.n1 % m == 0; }

// E[b](F_p) = Z/a' x Z/b' with a' = gcd(b, n2), b' = gcd(b, n1).
std::pair<std::uint64_t, std::uint64_t> torsion_subgroup_shape(const GroupShape& s,
                                                               std::uint64_t b);

// Membership in W(a, b): E[b](F_p) = Z/a x Z/b, i.e. b | n1 and gcd(b, n2) = a.
bool in_torsion_class(const GroupShape& s, std::uint64_t a, std::uint64_t b);

class WeierstrassCurve;

// Invertible affine substitution carrying points of a long-form curve onto
// its short-form model: x' = 36x + 3b2, y' = 108(2y + a1 x + a3).
struct ShortFormMap {
  const PrimeField* field = nullptr;
  std::uint32_t b2 = 0, a1 = 0, a3 = 0;
  CurvePoint apply(const CurvePoint& P) const;
};

// Weierstrass curve y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over F_p,
// p > 3. A curve with a1 = a2 = a3 = 0 is in short form y^2 = x^3 + Ax + B.
class WeierstrassCurve {
 public:
  static WeierstrassCurve long_form(const PrimeField& F, long long a1, long long a2,
                                    long long a3, long long a4, long long a6);
  static WeierstrassCurve short_form(const PrimeField& F, long long A, long long B);

  const PrimeField& field() const { return *F_; }
  std::uint32_t a1() const { return a1_; }
  std::uint32_t a2() const { return a2_; }
  std::uint32_t a3() const { return a3_; }
  std::uint32_t a4() const { return a4_; }
  std::uint32_t a6() const { return a6_; }

  bool is_short_form() const { return a1_ == 0 && a2_ == 0 && a3_ == 0; }
  std::uint32_t A() const;  // short form only
  std::uint32_t B() const;

  // Standard b- and c-invariants.
  std::uint32_t b2() const;
  std::uint32_t b4() const;
  std::uint32_t b6() const;
  std::uint32_t b8() const;
  std::uint32_t c4() const;
  std::uint32_t c6() const;

  std::uint32_t discriminant() const;
  bool is_singular() const { return discriminant() == 0; }
  std::uint32_t j_invariant() const;  // throws std::domain_error when singular

  bool contains(const CurvePoint& P) const;

  CurvePoint negate(const CurvePoint& P) const;
  // Chord-tangent group law on the long form; throws when an argument is not
  // on the curve or the curve is singular.
  CurvePoint add(const CurvePoint& P, const CurvePoint& Q) const;
  CurvePoint scalar_mul(std::uint64_t k, const CurvePoint& P) const;

  // #E(F_p) = p + 1 + sum_x chi(4x^3 + b2 x^2 + 2 b4 x + b6).
  std::uint64_t count_points() const;
  // Number of affine 2-torsion points (roots of the completed-square cubic);
  // 3 means full rational 2-torsion.
  int two_torsion_points() const;

  // Exponent n1 as the lcm of the orders of all rational points, with early
  // exit once the lcm reaches N. Intended for census-scale fields.
  GroupShape group_structure() const;

  int aut_size() const;  // 2, 4 or 6; p > 3

  WeierstrassCurve to_short() const;
  ShortFormMap short_form_map() const;

  // Group-law internals without on-curve validation (hot paths).
  CurvePoint add_raw(const CurvePoint& P, const CurvePoint& Q) const;
  CurvePoint scalar_raw(std::uint64_t k, CurvePoint P) const;

 private:
  WeierstrassCurve(const PrimeField& F, std::uint32_t a1, std::uint32_t a2, std::uint32_t a3,
                   std::uint32_t a4, std::uint32_t a6);

  const PrimeField* F_;
  std::uint32_t a1_, a2_, a3_, a4_, a6_;
};

// u-substitution test on short models: curves are isomorphic over F_p iff
// A2 = u^4 A1 and B2 = u^6 B1 for some u in F_p*.
bool is_isomorphic(const WeierstrassCurve& c1, const WeierstrassCurve& c2);

// One pass over x of the quadratic character of g(x) = 4x^3 + b2 x^2 +
// 2 b4 x + b6 (the completed square of the long form), via finite
// differences. chi_sum gives #E(F_p) = p + 1 + chi_sum; zeros counts the
// affine 2-torsion points.
struct CharSweep {
  long long chi_sum = 0;
  int zeros = 0;
};
CharSweep char_sum_sweep(const PrimeField& F, std::uint32_t b2, std::uint32_t b4,
                         std::uint32_t b6);

// Order of P from the factored group order.
std::uint64_t point_order(const WeierstrassCurve& curve, const CurvePoint& P,
                          const FactoredInt& group_order);

// Cyclicity of E(F_p) given N = #E(F_p) and the number of affine 2-torsion
// points, without computing the full group structure. (A, B) is a short model
// of the curve. Candidate primes l need l^2 | N and l | p - 1; l = 2 is read
// off the 2-torsion count, small odd l use the division-polynomial splitting
// test and larger l a deterministic-seed sampling argument with certificates.
bool cyclic_from_count(const PrimeField& F, std::uint32_t A, std::uint32_t B, std::uint64_t N,
                       int two_torsion_points, const SpfSieve& spf);

// Convenience wrapper: counts points, then decides cyclicity.
bool curve_is_cyclic(const WeierstrassCurve& curve, const SpfSieve& spf);

}  // namespace ecyc
