#include "ecyc/families.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "ecyc/numtheory.hpp"

namespace ecyc {

TorsionLabel TorsionLabel::of(std::uint32_t m) {
  static const std::array<std::uint32_t, 8> orders = {4, 5, 6, 7, 8, 9, 10, 12};
  if (std::find(orders.begin(), orders.end(), m) == orders.end()) {
    throw std::invalid_argument("TorsionLabel: m must be one of {4,5,6,7,8,9,10,12}");
  }
  TorsionLabel t;
  t.m = m;
  t.k = 0;
  std::uint32_t rest = m;
  while (rest % 2 == 0) {
    rest /= 2;
    ++t.k;
  }
  if (rest == 1) {
    t.ell0 = 1;
    t.n = 1;
  } else {
    t.ell0 = (rest % 3 == 0) ? 3 : (rest % 5 == 0) ? 5 : 7;
    t.n = 0;
    while (rest % t.ell0 == 0) {
      rest /= t.ell0;
      ++t.n;
    }
  }
  return t;
}

const std::array<std::uint32_t, 8>& TorsionLabel::family_orders() {
  static const std::array<std::uint32_t, 8> orders = {4, 5, 6, 7, 8, 9, 10, 12};
  return orders;
}

std::uint32_t IntPoly::eval_mod(const PrimeField& F, std::uint32_t x) const {
  std::uint32_t r = 0;
  for (std::size_t i = c.size(); i-- > 0;) r = F.add(F.mul(r, x), F.from_int(c[i]));
  return r;
}

BigInt IntPoly::eval(const BigInt& x) const {
  BigInt r = 0;
  for (std::size_t i = c.size(); i-- > 0;) r = r * x + BigInt(static_cast<long>(c[i]));
  return r;
}

std::string IntPoly::to_string(const std::string& var) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c.size(); i-- > 0;) {
    long long v = c[i];
    if (v == 0) continue;
    if (!first) os << (v > 0 ? " + " : " - ");
    else if (v < 0) os << "-";
    long long av = v < 0 ? -v : v;
    if (av != 1 || i == 0) os << av;
    if (i >= 1) {
      os << var;
      if (i >= 2) os << "^" << i;
    }
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

namespace {

const IntPoly kOne{{1}};

std::map<std::uint32_t, FamilySpec> build_family_table() {
  std::map<std::uint32_t, FamilySpec> t;
  auto put = [&](std::uint32_t m, RationalFunc a1, RationalFunc a2,
                 std::vector<std::pair<IntPoly, int>> disc) {
    FamilySpec s;
    s.label = TorsionLabel::of(m);
    s.a1 = std::move(a1);
    s.a2 = a2;
    s.a3 = std::move(a2);  // Tate normal form: a2 = a3 = -b
    s.disc_factors = std::move(disc);
    t.emplace(m, std::move(s));
  };

  put(4, {{{1}}, kOne}, {{{0, -1}}, kOne},
      {{{{1, 16}}, 1}, {{{0, 1}}, 4}});
  put(5, {{{1, -1}}, kOne}, {{{0, -1}}, kOne},
      {{{{0, 1}}, 5}, {{{-1, -11, 1}}, 1}});
  put(6, {{{1, -1}}, kOne}, {{{0, -1, -1}}, kOne},
      {{{{1, 9}}, 1}, {{{1, 1}}, 3}, {{{0, 1}}, 6}});
  put(7, {{{1, 1, -1}}, kOne}, {{{0, 0, 1, -1}}, kOne},
      {{{{-1, 1}}, 7}, {{{0, 1}}, 7}, {{{1, 5, -8, 1}}, 1}});
  put(8, {{{-1, 4, -2}}, {{0, 1}}}, {{{-1, 3, -2}}, kOne},
      {{{{0, 1}}, -4}, {{{-1, 2}}, 4}, {{{-1, 1}}, 8}, {{{1, -8, 8}}, 1}});
  put(9, {{{1, 0, 1, -1}}, kOne}, {{{0, 0, 1, -2, 2, -1}}, kOne},
      {{{{-1, 1}}, 9}, {{{0, 1}}, 9}, {{{1, -1, 1}}, 3}, {{{1, 3, -6, 1}}, 1}});
  put(10, {{{1, -2, -2, 2}}, {{1, -3, 1}}},
      {{{0, 0, 0, -1, 3, -2}}, {{1, -6, 11, -6, 1}}},
      {{{{-1, 2}}, 5}, {{{-1, 1}}, 10}, {{{0, 1}}, 10}, {{{1, -3, 1}}, -10},
       {{{-1, -2, 4}}, 1}});
  put(12, {{{-1, 2, 2, -8, 6}}, {{-1, 3, -3, 1}}},
      {{{0, 1, -7, 21, -34, 30, -12}}, {{1, -4, 6, -4, 1}}},
      {{{{-1, 1}}, -24}, {{{-1, 2}}, 6}, {{{0, 1}}, 12}, {{{1, -6, 6}}, 1},
       {{{1, -2, 2}}, 3}, {{{1, -3, 3}}, 4}});
  return t;
}

const std::map<std::uint32_t, FamilySpec>& family_table() {
  static const std::map<std::uint32_t, FamilySpec> t = build_family_table();
  return t;
}

}  // namespace

const FamilySpec& FamilySpec::get(std::uint32_t m) {
  auto it = family_table().find(m);
  if (it == family_table().end()) {
    throw std::invalid_argument("FamilySpec: m must be one of {4,5,6,7,8,9,10,12}");
  }
  return it->second;
}

ParamValidity family_parameter_validity(std::uint32_t m, std::uint32_t a, const PrimeField& F) {
  const FamilySpec& fam = FamilySpec::get(m);
  for (const RationalFunc* rf : {&fam.a1, &fam.a2, &fam.a3}) {
    if (rf->den.eval_mod(F, a) == 0) return ParamValidity::undefined;
  }
  for (const auto& [poly, e] : fam.disc_factors) {
    if (e < 0 && poly.eval_mod(F, a) == 0) return ParamValidity::undefined;
  }
  for (const auto& [poly, e] : fam.disc_factors) {
    if (e > 0 && poly.eval_mod(F, a) == 0) return ParamValidity::singular;
  }
  return ParamValidity::valid;
}

std::optional<std::uint32_t> family_discriminant(std::uint32_t m, std::uint32_t a,
                                                 const PrimeField& F) {
  const FamilySpec& fam = FamilySpec::get(m);
  std::uint32_t r = 1;
  for (const auto& [poly, e] : fam.disc_factors) {
    std::uint32_t v = poly.eval_mod(F, a);
    if (e < 0) {
      if (v == 0) return std::nullopt;
      r = F.mul(r, F.pow(F.inv(v), static_cast<std::uint64_t>(-e)));
    } else {
      r = F.mul(r, F.pow(v, static_cast<std::uint64_t>(e)));
    }
  }
  return r;
}

FamilyCurve family_curve(std::uint32_t m, std::uint32_t a, const PrimeField& F) {
  FamilyCurve out;
  out.validity = family_parameter_validity(m, a, F);
  if (out.validity != ParamValidity::valid) return out;
  const FamilySpec& fam = FamilySpec::get(m);
  auto coeff = [&](const RationalFunc& rf) {
    std::uint32_t num = rf.num.eval_mod(F, a);
    std::uint32_t den = rf.den.eval_mod(F, a);
    return F.mul(num, F.inv(den));
  };
  std::uint32_t a1 = coeff(fam.a1), a2 = coeff(fam.a2), a3 = coeff(fam.a3);
  out.curve = WeierstrassCurve::long_form(F, a1, a2, a3, 0, 0);
  // (0,0) lies on every family model; a4 = a6 = 0
  return out;
}

std::uint32_t marked_point_order(std::uint32_t m, std::uint32_t a, const PrimeField& F) {
  FamilyCurve fc = family_curve(m, a, F);
  if (fc.validity != ParamValidity::valid) {
    throw std::invalid_argument("marked_point_order: invalid family parameter");
  }
  const WeierstrassCurve& E = *fc.curve;
  CurvePoint P = CurvePoint::affine(0, 0);
  CurvePoint Q = P;  // Q = kP at the top of iteration k
  for (std::uint32_t k = 1; k <= m; ++k) {
    if (Q.infinity) return k;
    Q = E.add_raw(Q, P);
  }
  // order exceeds m; fall back to the exact order
  return static_cast<std::uint32_t>(point_order(E, P, factorize(E.count_points())));
}

namespace {

// Fractional-linear parameter maps of the published table; each entry is
// (c0 + c1 a) / (d0 + d1 a).
struct FracMap {
  long long c0, c1, d0, d1;
  std::optional<std::uint32_t> apply(const PrimeField& F, std::uint32_t a) const {
    std::uint32_t den = F.add(F.from_int(d0), F.mul(F.from_int(d1), a));
    if (den == 0) return std::nullopt;
    std::uint32_t num = F.add(F.from_int(c0), F.mul(F.from_int(c1), a));
    return F.mul(num, F.inv(den));
  }
};

std::vector<FracMap> parameter_maps(std::uint32_t m, MapConvention conv) {
  switch (m) {
    case 4:
    case 6:
      return {};
    case 5:
      return {{-1, 0, 0, 1}};  // -1/a
    case 8:
    case 12:
      return {{1, -1, 1, 0}};  // 1 - a
    case 10:
      return {{-1, 1, -1, 2}};  // (a-1)/(2a-1)
    case 7:
      if (conv == MapConvention::printed) {
        return {{1, -1, 0, 1}, {-1, 0, 1, -1}};  // (1-a)/a, -1/(1-a)
      }
      return {{-1, 1, 0, 1}, {-1, 0, -1, 1}};  // (a-1)/a, -1/(a-1)
    case 9:
      if (conv == MapConvention::printed) {
        return {{-1, 1, 0, 1}, {-1, 0, -1, 1}};  // (a-1)/a, -1/(a-1)
      }
      return {{1, -1, 0, 1}, {-1, 0, 1, -1}};  // (1-a)/a, -1/(1-a)
    default:
      throw std::invalid_argument("parameter_maps: unsupported m");
  }
}

}  // namespace

std::vector<std::uint32_t> equivalent_parameters(std::uint32_t m, std::uint32_t a,
                                                 const PrimeField& F, MapConvention conv) {
  std::vector<std::uint32_t> out{a};
  for (const FracMap& map : parameter_maps(m, conv)) {
    if (auto im = map.apply(F, a)) out.push_back(*im);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

EquivalenceReport verify_parameter_equivalence(std::uint32_t m, const PrimeField& F,
                                               MapConvention conv) {
  EquivalenceReport rep;
  rep.m = m;
  rep.p = F.p();
  rep.convention = conv;
  const std::uint64_t orbit_target = euler_phi(static_cast<std::uint64_t>(m)) / 2;
  const std::uint32_t j1728 = F.from_int(1728);
  const auto maps = parameter_maps(m, conv);

  for (std::uint32_t a = 0; a < F.p(); ++a) {
    FamilyCurve fc = family_curve(m, a, F);
    if (fc.validity != ParamValidity::valid) continue;
    ++rep.checked_parameters;
    std::uint32_t j = fc.curve->j_invariant();
    bool exceptional = (j == 0 || j == j1728);
    if (exceptional) ++rep.exceptional_parameters;

    std::vector<std::uint32_t> orbit{a};
    for (const FracMap& map : maps) {
      auto im = map.apply(F, a);
      if (!im) {
        rep.discrepancies.push_back(
            {a, EquivalenceDiscrepancy::Kind::undefined_image, 0});
        continue;
      }
      FamilyCurve gc = family_curve(m, *im, F);
      if (gc.validity != ParamValidity::valid) {
        rep.discrepancies.push_back(
            {a, EquivalenceDiscrepancy::Kind::singular_image, *im});
        continue;
      }
      if (!is_isomorphic(*fc.curve, *gc.curve)) {
        rep.discrepancies.push_back(
            {a, EquivalenceDiscrepancy::Kind::not_isomorphic, *im});
        continue;
      }
      orbit.push_back(*im);
    }
    std::sort(orbit.begin(), orbit.end());
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
    if (!exceptional && orbit.size() != orbit_target) {
      rep.discrepancies.push_back({a, EquivalenceDiscrepancy::Kind::orbit_size,
                                   static_cast<std::uint32_t>(orbit.size())});
    }
  }
  return rep;
}

bool GlobalFamilyCurve::is_bad_prime(std::uint64_t p) const {
  if (p <= 3) return true;
  if (mpz_divisible_ui_p(den_product.get_mpz_t(), p)) return true;
  BigInt num = numerator(disc);
  return mpz_divisible_ui_p(num.get_mpz_t(), p) != 0;
}

std::vector<std::uint64_t> GlobalFamilyCurve::bad_primes_up_to(std::uint64_t x) const {
  std::vector<std::uint64_t> out;
  if (x < 2) return out;
  for (std::uint32_t p : primes_up_to(static_cast<std::uint32_t>(x))) {
    if (is_bad_prime(p)) out.push_back(p);
  }
  return out;
}

std::optional<std::vector<std::uint64_t>> GlobalFamilyCurve::bad_primes() const {
  BigInt v = abs(numerator(disc) * den_product);
  std::vector<std::uint64_t> out{2, 3};
  for (std::uint32_t p : primes_up_to(100000)) {
    if (mpz_divisible_ui_p(v.get_mpz_t(), p)) {
      if (p > 3) out.push_back(p);
      while (mpz_divisible_ui_p(v.get_mpz_t(), p)) v /= p;
    }
    if (v == 1) break;
  }
  if (v != 1) {
    if (mpz_probab_prime_p(v.get_mpz_t(), 40) == 0 || !v.fits_ulong_p()) return std::nullopt;
    out.push_back(v.get_ui());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

GlobalFamilyCurve global_family(std::uint32_t m, long long a) {
  const FamilySpec& fam = FamilySpec::get(m);
  GlobalFamilyCurve out;
  out.m = m;
  out.a = a;
  out.den_product = 1;
  BigInt av(static_cast<long>(a));
  const RationalFunc* rfs[3] = {&fam.a1, &fam.a2, &fam.a3};
  for (int i = 0; i < 3; ++i) {
    BigInt num = rfs[i]->num.eval(av);
    BigInt den = rfs[i]->den.eval(av);
    if (den == 0) throw std::invalid_argument("global_family: parameter undefined over Q");
    out.coeffs[i] = ratio(num, den);
    out.den_product *= abs(den);
  }
  out.disc = Rational(1);
  for (const auto& [poly, e] : fam.disc_factors) {
    BigInt v = poly.eval(av);
    if (v == 0) {
      throw std::invalid_argument(e < 0 ? "global_family: parameter undefined over Q"
                                        : "global_family: globally singular parameter");
    }
    BigInt pw;
    mpz_pow_ui(pw.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
    out.disc *= (e < 0) ? ratio(BigInt(1), pw) : Rational(pw);
  }
  return out;
}

}  // namespace ecyc
