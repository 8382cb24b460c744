#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ecyc/finite_curves.hpp"
#include "ecyc/rational.hpp"

namespace ecyc {

// Torsion order m = 2^k * ell0^n for the one-parameter families,
// m in {4,5,6,7,8,9,10,12}; ell0 = n = 1 when m is a power of two.
struct TorsionLabel {
  std::uint32_t m = 4;
  std::uint32_t k = 2;
  std::uint32_t ell0 = 1;
  std::uint32_t n = 1;

  static TorsionLabel of(std::uint32_t m);  // throws outside the family set
  static const std::array<std::uint32_t, 8>& family_orders();
  bool is_two_power() const { return ell0 == 1; }
};

// Integer polynomial, ascending coefficients.
struct IntPoly {
  std::vector<long long> c;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  std::uint32_t eval_mod(const PrimeField& F, std::uint32_t x) const;
  BigInt eval(const BigInt& x) const;
  std::string to_string(const std::string& var = "a") const;
};

struct RationalFunc {
  IntPoly num;
  IntPoly den;  // den = {1} for polynomial entries
};

// One-parameter family E_m(a): Tate-normal-form coefficients
// a1(a), a2(a), a3(a) (a4 = a6 = 0) and the discriminant as a factored list
// of (integer polynomial, exponent) pairs. Negative exponents occur for
// m in {8, 10, 12}; their zero sets coincide with the coefficient
// denominators, which is why the factored form is stored verbatim.
struct FamilySpec {
  TorsionLabel label;
  RationalFunc a1, a2, a3;
  std::vector<std::pair<IntPoly, int>> disc_factors;

  static const FamilySpec& get(std::uint32_t m);
};

enum class ParamValidity { valid, singular, undefined };

struct FamilyCurve {
  ParamValidity validity = ParamValidity::undefined;
  std::optional<WeierstrassCurve> curve;  // present iff valid
};

// Evaluate the family at a parameter of F_p. "undefined" when a coefficient
// denominator (equivalently a negative-exponent discriminant factor)
// vanishes, "singular" when defined but Delta_m(a) = 0.
FamilyCurve family_curve(std::uint32_t m, std::uint32_t a, const PrimeField& F);

// Delta_m(a) from the factored form; nullopt where a negative-exponent
// factor vanishes.
std::optional<std::uint32_t> family_discriminant(std::uint32_t m, std::uint32_t a,
                                                 const PrimeField& F);

ParamValidity family_parameter_validity(std::uint32_t m, std::uint32_t a, const PrimeField& F);

// Order of the marked point (0, 0) on E_m(a); throws on invalid parameters.
// The order divides m for every valid parameter (verified by the census).
std::uint32_t marked_point_order(std::uint32_t m, std::uint32_t a, const PrimeField& F);

// Parameter-equivalence maps: images of a under the fractional-linear maps
// that yield isomorphic curves. "printed" is the published table; for
// m in {7, 9} "sign_variant" flips a-1 <-> 1-a, and the verifier decides
// empirically which convention is consistent.
enum class MapConvention { printed, sign_variant };

std::vector<std::uint32_t> equivalent_parameters(std::uint32_t m, std::uint32_t a,
                                                 const PrimeField& F,
                                                 MapConvention conv = MapConvention::printed);

struct EquivalenceDiscrepancy {
  enum class Kind { undefined_image, singular_image, not_isomorphic, orbit_size };
  std::uint32_t a = 0;
  Kind kind = Kind::not_isomorphic;
  std::uint32_t detail = 0;  // offending image, or observed orbit size
};

struct EquivalenceReport {
  std::uint32_t m = 0;
  std::uint32_t p = 0;
  MapConvention convention = MapConvention::printed;
  std::uint64_t checked_parameters = 0;
  // parameters with j in {0, 1728}, exempt from the orbit-size requirement
  std::uint64_t exceptional_parameters = 0;
  std::vector<EquivalenceDiscrepancy> discrepancies;
};

// Sweep all valid parameters: every image must be valid and isomorphic to
// the source curve, and orbits must have size phi(m)/2 outside the
// extra-automorphism exceptional set. Discrepancies are data, not errors.
EquivalenceReport verify_parameter_equivalence(std::uint32_t m, const PrimeField& F,
                                               MapConvention conv = MapConvention::printed);

// E_m(a) over Q for an integer parameter, with enough data to decide the
// finite bad-prime set: p <= 3, p dividing a coefficient denominator, or
// p dividing the numerator of Delta_m(a).
struct GlobalFamilyCurve {
  std::uint32_t m = 0;
  long long a = 0;
  std::array<Rational, 3> coeffs;  // a1, a2, a3
  Rational disc;
  BigInt den_product;  // product of coefficient-denominator values

  bool is_bad_prime(std::uint64_t p) const;
  std::vector<std::uint64_t> bad_primes_up_to(std::uint64_t x) const;
  // Complete bad-prime set; nullopt when the discriminant numerator does not
  // fully factor by trial division (large parameters).
  std::optional<std::vector<std::uint64_t>> bad_primes() const;
};

// Throws when the parameter is globally undefined or singular.
GlobalFamilyCurve global_family(std::uint32_t m, long long a);

}  // namespace ecyc
