#include "ecyc/finite_curves.hpp"

#include <numeric>
#include <stdexcept>

#include "ecyc/fppoly.hpp"

namespace ecyc {

namespace {

constexpr std::uint32_t kMaxFieldSize = 1u << 24;

}  // namespace

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p <= 3 || !ecyc::is_prime(p)) {
    throw std::invalid_argument("PrimeField: p must be a prime > 3");
  }
  if (p > kMaxFieldSize) {
    throw std::invalid_argument("PrimeField: p too large for table construction");
  }
  chi_.assign(p, -1);
  sqrt_.assign(p, p);
  chi_[0] = 0;
  sqrt_[0] = 0;
  for (std::uint32_t y = 1; y <= (p - 1) / 2; ++y) {
    std::uint32_t t = mul(y, y);
    if (chi_[t] < 0) {
      chi_[t] = 1;
      sqrt_[t] = y;
    }
  }
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
  if (a == 0) throw std::domain_error("PrimeField::inv: zero has no inverse");
  long long t = 0, nt = 1;
  long long r = p_, nr = a;
  while (nr != 0) {
    long long q = r / nr;
    t -= q * nt;
    std::swap(t, nt);
    r -= q * nr;
    std::swap(r, nr);
  }
  return static_cast<std::uint32_t>(t < 0 ? t + p_ : t);
}

std::uint32_t PrimeField::pow(std::uint32_t a, std::uint64_t e) const {
  std::uint64_t base = a, r = 1;
  while (e) {
    if (e & 1) r = r * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

GroupShape GroupShape::make(std::uint32_t p, std::uint64_t N, std::uint64_t n1) {
  if (n1 == 0 || N % n1 != 0) throw std::invalid_argument("GroupShape: n1 must divide N");
  GroupShape s;
  s.p = p;
  s.N = N;
  s.n1 = n1;
  s.n2 = N / n1;
  s.trace = static_cast<long long>(N) - p - 1;
  if (s.n1 % s.n2 != 0) throw std::invalid_argument("GroupShape: n2 must divide n1");
  if ((p - 1) % s.n2 != 0) throw std::invalid_argument("GroupShape: n2 must divide p-1");
  if (static_cast<std::uint64_t>(s.trace * s.trace) > 4ull * p) {
    throw std::invalid_argument("GroupShape: Hasse bound violated");
  }
  return s;
}

std::pair<std::uint64_t, std::uint64_t> torsion_subgroup_shape(const GroupShape& s,
                                                               std::uint64_t b) {
  if (b == 0) throw std::invalid_argument("torsion_subgroup_shape: b must be positive");
  return {std::gcd(b, s.n2), std::gcd(b, s.n1)};
}

bool in_torsion_class(const GroupShape& s, std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b % a != 0) throw std::invalid_argument("in_torsion_class: need a | b");
  return s.n1 % b == 0 && std::gcd(b, s.n2) == a;
}

CurvePoint ShortFormMap::apply(const CurvePoint& P) const {
  if (P.infinity) return P;
  const PrimeField& F = *field;
  std::uint32_t x = F.add(F.mul(F.from_int(36), P.x), F.mul(F.from_int(3), b2));
  std::uint32_t w = F.add(F.add(P.y, P.y), F.add(F.mul(a1, P.x), a3));
  std::uint32_t y = F.mul(F.from_int(108), w);
  return CurvePoint::affine(x, y);
}

WeierstrassCurve::WeierstrassCurve(const PrimeField& F, std::uint32_t a1, std::uint32_t a2,
                                   std::uint32_t a3, std::uint32_t a4, std::uint32_t a6)
    : F_(&F), a1_(a1), a2_(a2), a3_(a3), a4_(a4), a6_(a6) {}

WeierstrassCurve WeierstrassCurve::long_form(const PrimeField& F, long long a1, long long a2,
                                             long long a3, long long a4, long long a6) {
  return WeierstrassCurve(F, F.from_int(a1), F.from_int(a2), F.from_int(a3), F.from_int(a4),
                          F.from_int(a6));
}

WeierstrassCurve WeierstrassCurve::short_form(const PrimeField& F, long long A, long long B) {
  return WeierstrassCurve(F, 0, 0, 0, F.from_int(A), F.from_int(B));
}

std::uint32_t WeierstrassCurve::A() const {
  if (!is_short_form()) throw std::logic_error("WeierstrassCurve::A: not a short form");
  return a4_;
}

std::uint32_t WeierstrassCurve::B() const {
  if (!is_short_form()) throw std::logic_error("WeierstrassCurve::B: not a short form");
  return a6_;
}

std::uint32_t WeierstrassCurve::b2() const {
  const PrimeField& F = *F_;
  return F.add(F.mul(a1_, a1_), F.mul(F.from_int(4), a2_));
}

std::uint32_t WeierstrassCurve::b4() const {
  const PrimeField& F = *F_;
  return F.add(F.add(a4_, a4_), F.mul(a1_, a3_));
}

std::uint32_t WeierstrassCurve::b6() const {
  const PrimeField& F = *F_;
  return F.add(F.mul(a3_, a3_), F.mul(F.from_int(4), a6_));
}

std::uint32_t WeierstrassCurve::b8() const {
  const PrimeField& F = *F_;
  std::uint32_t t = F.add(F.mul(F.mul(a1_, a1_), a6_), F.mul(F.mul(F.from_int(4), a2_), a6_));
  t = F.sub(t, F.mul(F.mul(a1_, a3_), a4_));
  t = F.add(t, F.mul(a2_, F.mul(a3_, a3_)));
  return F.sub(t, F.mul(a4_, a4_));
}

std::uint32_t WeierstrassCurve::c4() const {
  const PrimeField& F = *F_;
  return F.sub(F.mul(b2(), b2()), F.mul(F.from_int(24), b4()));
}

std::uint32_t WeierstrassCurve::c6() const {
  const PrimeField& F = *F_;
  std::uint32_t B2 = b2();
  std::uint32_t t = F.neg(F.mul(F.mul(B2, B2), B2));
  t = F.add(t, F.mul(F.from_int(36), F.mul(B2, b4())));
  return F.sub(t, F.mul(F.from_int(216), b6()));
}

std::uint32_t WeierstrassCurve::discriminant() const {
  const PrimeField& F = *F_;
  std::uint32_t B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
  std::uint32_t d = F.neg(F.mul(F.mul(B2, B2), B8));
  d = F.sub(d, F.mul(F.from_int(8), F.mul(F.mul(B4, B4), B4)));
  d = F.sub(d, F.mul(F.from_int(27), F.mul(B6, B6)));
  d = F.add(d, F.mul(F.from_int(9), F.mul(B2, F.mul(B4, B6))));
  return d;
}

std::uint32_t WeierstrassCurve::j_invariant() const {
  std::uint32_t d = discriminant();
  if (d == 0) throw std::domain_error("j_invariant: singular curve");
  const PrimeField& F = *F_;
  std::uint32_t C4 = c4();
  return F.mul(F.mul(F.mul(C4, C4), C4), F.inv(d));
}

bool WeierstrassCurve::contains(const CurvePoint& P) const {
  if (P.infinity) return true;
  const PrimeField& F = *F_;
  std::uint32_t lhs = F.add(F.mul(P.y, P.y), F.add(F.mul(a1_, F.mul(P.x, P.y)), F.mul(a3_, P.y)));
  std::uint32_t x2 = F.mul(P.x, P.x);
  std::uint32_t rhs = F.add(F.mul(x2, P.x), F.add(F.mul(a2_, x2), F.add(F.mul(a4_, P.x), a6_)));
  return lhs == rhs;
}

CurvePoint WeierstrassCurve::negate(const CurvePoint& P) const {
  if (P.infinity) return P;
  const PrimeField& F = *F_;
  return CurvePoint::affine(P.x, F.sub(F.neg(P.y), F.add(F.mul(a1_, P.x), a3_)));
}

CurvePoint WeierstrassCurve::add_raw(const CurvePoint& P, const CurvePoint& Q) const {
  if (P.infinity) return Q;
  if (Q.infinity) return P;
  const PrimeField& F = *F_;
  if (P.x == Q.x && F.add(F.add(P.y, Q.y), F.add(F.mul(a1_, Q.x), a3_)) == 0) {
    return CurvePoint::at_infinity();
  }
  std::uint32_t lam;
  if (P.x != Q.x) {
    lam = F.mul(F.sub(Q.y, P.y), F.inv(F.sub(Q.x, P.x)));
  } else {
    // tangent slope; the denominator is nonzero here since 2-torsion was
    // handled by the inverse test above
    std::uint32_t num = F.sub(
        F.add(F.mul(F.from_int(3), F.mul(P.x, P.x)), F.add(F.mul(F.add(a2_, a2_), P.x), a4_)),
        F.mul(a1_, P.y));
    std::uint32_t den = F.add(F.add(P.y, P.y), F.add(F.mul(a1_, P.x), a3_));
    lam = F.mul(num, F.inv(den));
  }
  std::uint32_t nu = F.sub(P.y, F.mul(lam, P.x));
  std::uint32_t x3 = F.sub(F.sub(F.add(F.mul(lam, lam), F.mul(a1_, lam)), a2_), F.add(P.x, Q.x));
  std::uint32_t y3 = F.sub(F.sub(F.neg(F.mul(F.add(lam, a1_), x3)), nu), a3_);
  return CurvePoint::affine(x3, y3);
}

CurvePoint WeierstrassCurve::scalar_raw(std::uint64_t k, CurvePoint P) const {
  CurvePoint R = CurvePoint::at_infinity();
  while (k) {
    if (k & 1) R = add_raw(R, P);
    k >>= 1;
    if (k) P = add_raw(P, P);
  }
  return R;
}

CurvePoint WeierstrassCurve::add(const CurvePoint& P, const CurvePoint& Q) const {
  if (is_singular()) throw std::domain_error("add: singular curve");
  if (!contains(P) || !contains(Q)) throw std::invalid_argument("add: point not on curve");
  return add_raw(P, Q);
}

CurvePoint WeierstrassCurve::scalar_mul(std::uint64_t k, const CurvePoint& P) const {
  if (is_singular()) throw std::domain_error("scalar_mul: singular curve");
  if (!contains(P)) throw std::invalid_argument("scalar_mul: point not on curve");
  return scalar_raw(k, P);
}

CharSweep char_sum_sweep(const PrimeField& F, std::uint32_t B2, std::uint32_t B4,
                         std::uint32_t B6) {
  const std::uint32_t p = F.p();
  const std::int8_t* chi = F.chi_table();
  // g(x) = 4x^3 + b2 x^2 + 2 b4 x + b6, advanced by finite differences.
  auto geval = [&](std::uint64_t x) -> std::uint32_t {
    std::uint64_t r = (4 * x + B2) % p;
    r = (r * x + 2ull * B4) % p;
    return static_cast<std::uint32_t>((r * x + B6) % p);
  };
  std::uint32_t s0 = geval(0);
  std::uint32_t g1 = geval(1), g2 = geval(2);
  std::uint32_t s1 = F.sub(g1, s0);
  std::uint32_t s2 = F.sub(F.add(g2, s0), F.add(g1, g1));
  const std::uint32_t d3 = 24 % p;
  long long sum = 0;
  int zeros = 0;
  for (std::uint32_t x = 0; x < p; ++x) {
    sum += chi[s0];
    zeros += (s0 == 0);
    s0 += s1;
    if (s0 >= p) s0 -= p;
    s1 += s2;
    if (s1 >= p) s1 -= p;
    s2 += d3;
    if (s2 >= p) s2 -= p;
  }
  return CharSweep{sum, zeros};
}

std::uint64_t WeierstrassCurve::count_points() const {
  if (is_singular()) throw std::domain_error("count_points: singular curve");
  CharSweep s = char_sum_sweep(*F_, b2(), b4(), b6());
  return static_cast<std::uint64_t>(F_->p() + 1 + s.chi_sum);
}

int WeierstrassCurve::two_torsion_points() const {
  if (is_singular()) throw std::domain_error("two_torsion_points: singular curve");
  CharSweep s = char_sum_sweep(*F_, b2(), b4(), b6());
  return s.zeros;
}

std::uint64_t point_order(const WeierstrassCurve& curve, const CurvePoint& P,
                          const FactoredInt& group_order) {
  std::uint64_t ord = 1;
  for (const auto& [l, e] : group_order.factors) {
    std::uint64_t pe = 1;
    for (int i = 0; i < e; ++i) pe *= l;
    CurvePoint Q = curve.scalar_raw(group_order.value / pe, P);
    int steps = 0;
    while (!Q.infinity) {
      if (++steps > e) {
        throw std::logic_error("point_order: order does not divide the group order");
      }
      Q = curve.scalar_raw(l, Q);
      ord *= l;
    }
  }
  return ord;
}

namespace {

// True iff no multiple of L other than L itself is an admissible exponent for
// a group of order N over F_p (n2 = N/n1 must divide both n1 and p-1).
bool exponent_settled(std::uint64_t N, std::uint64_t L, std::uint32_t p) {
  std::uint64_t q = N / L;
  if (L % q != 0 || (p - 1) % q != 0) return false;  // L itself not admissible
  for (std::uint64_t s = 2; s <= q; ++s) {
    if (q % s != 0) continue;
    std::uint64_t d = L * s, q2 = N / d;
    if (d % q2 == 0 && (p - 1) % q2 == 0) return false;
  }
  return true;
}

}  // namespace

GroupShape WeierstrassCurve::group_structure() const {
  if (is_singular()) throw std::domain_error("group_structure: singular curve");
  const PrimeField& F = *F_;
  const std::uint32_t p = F.p();
  std::uint64_t N = count_points();
  FactoredInt fN = factorize(N);
  std::uint32_t inv2 = F.inv(2);

  // iterate one representative of each {P, -P} pair via the completed square
  std::uint32_t B2 = b2(), B4 = b4(), B6 = b6();
  std::uint64_t L = 1;
  for (std::uint32_t x = 0; x < p && L < N; ++x) {
    std::uint64_t g = (4 * std::uint64_t(x) + B2) % p;
    g = (g * x + 2ull * B4) % p;
    g = (g * x + B6) % p;
    if (F.chi(static_cast<std::uint32_t>(g)) < 0) continue;
    std::uint32_t s = *F.sqrt(static_cast<std::uint32_t>(g));
    std::uint32_t y = F.mul(F.sub(s, F.add(F.mul(a1_, x), a3_)), inv2);
    std::uint64_t ord = point_order(*this, CurvePoint::affine(x, y), fN);
    std::uint64_t nl = std::lcm(L, ord);
    if (nl != L) {
      L = nl;
      if (L < N && exponent_settled(N, L, p)) break;
    }
  }
  return GroupShape::make(p, N, L);
}

int WeierstrassCurve::aut_size() const {
  const PrimeField& F = *F_;
  std::uint32_t j = j_invariant();
  if (j == 0) return (F.p() % 3 == 1) ? 6 : 2;
  if (j == F.from_int(1728)) return (F.p() % 4 == 1) ? 4 : 2;
  return 2;
}

ShortFormMap WeierstrassCurve::short_form_map() const {
  return ShortFormMap{F_, b2(), a1_, a3_};
}

WeierstrassCurve WeierstrassCurve::to_short() const {
  const PrimeField& F = *F_;
  std::uint32_t A = F.neg(F.mul(F.from_int(27), c4()));
  std::uint32_t B = F.neg(F.mul(F.from_int(54), c6()));
  return WeierstrassCurve(F, 0, 0, 0, A, B);
}

bool is_isomorphic(const WeierstrassCurve& c1, const WeierstrassCurve& c2) {
  if (c1.field().p() != c2.field().p()) {
    throw std::invalid_argument("is_isomorphic: curves over different fields");
  }
  if (c1.is_singular() || c2.is_singular()) {
    throw std::invalid_argument("is_isomorphic: singular curve");
  }
  const PrimeField& F = c1.field();
  const std::uint32_t p = F.p();
  WeierstrassCurve s1 = c1.to_short(), s2 = c2.to_short();
  std::uint32_t A1 = s1.A(), B1 = s1.B(), A2 = s2.A(), B2 = s2.B();
  if ((A1 == 0) != (A2 == 0) || (B1 == 0) != (B2 == 0)) return false;
  if (A1 == 0) {  // j = 0: need B2/B1 a sixth power
    std::uint32_t t = F.div(B2, B1);
    return F.pow(t, (p - 1) / std::gcd<std::uint32_t>(6, p - 1)) == 1;
  }
  if (B1 == 0) {  // j = 1728: need A2/A1 a fourth power
    std::uint32_t t = F.div(A2, A1);
    return F.pow(t, (p - 1) / std::gcd<std::uint32_t>(4, p - 1)) == 1;
  }
  std::uint32_t ra = F.div(A2, A1), rb = F.div(B2, B1);
  std::uint32_t s = F.div(rb, ra);  // u^2 if an isomorphism exists
  return F.mul(s, s) == ra && F.mul(F.mul(s, s), s) == rb && F.chi(s) == 1;
}

namespace {

struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
};

// Decide whether E[l] is rational for an odd prime l with l^2 | N, by
// exhibiting either a point of full l-power order (so v_l(n2) = 0) or two
// independent points of order l (so E[l] is rational). Deterministic seed;
// falls back to the division-polynomial test if sampling stalls.
bool full_torsion_by_sampling(const PrimeField& F, std::uint32_t A, std::uint32_t B,
                              std::uint64_t N, std::uint64_t l, int e) {
  const std::uint32_t p = F.p();
  WeierstrassCurve E = WeierstrassCurve::short_form(F, A, B);
  std::uint64_t le = 1;
  for (int i = 0; i < e; ++i) le *= l;
  const std::uint64_t M = N / le;

  SplitMix64 rng{(std::uint64_t(p) << 34) ^ (std::uint64_t(A) << 17) ^ B};
  CurvePoint R1 = CurvePoint::at_infinity();
  std::vector<std::uint32_t> r1_xs;  // x-coords of the multiples of R1

  for (int iter = 0; iter < 60; ++iter) {
    std::uint32_t x = static_cast<std::uint32_t>(rng.next() % p);
    std::uint64_t t = ((std::uint64_t(x) * x % p) * x + std::uint64_t(A) * x + B) % p;
    if (F.chi(static_cast<std::uint32_t>(t)) < 0) continue;
    CurvePoint P = CurvePoint::affine(x, *F.sqrt(static_cast<std::uint32_t>(t)));
    CurvePoint Q = E.scalar_raw(M, P);
    if (Q.infinity) continue;
    int j = 0;
    CurvePoint prev = Q;
    while (!Q.infinity) {
      prev = Q;
      Q = E.scalar_raw(l, Q);
      ++j;
    }
    if (j == e) return false;  // a point of l-order l^e exists: cyclic at l
    // prev has order l
    if (R1.infinity) {
      R1 = prev;
      CurvePoint K = R1;
      for (std::uint64_t k = 1; 2 * k <= l - 1; ++k) {
        r1_xs.push_back(K.x);
        K = E.add_raw(K, R1);
      }
    } else {
      bool dependent = false;
      for (std::uint32_t xc : r1_xs) {
        if (xc == prev.x) {
          dependent = true;
          break;
        }
      }
      if (!dependent) return true;  // two independent order-l points
    }
  }
  return full_odd_torsion(F, A, B, static_cast<std::uint32_t>(l));
}

}  // namespace

bool cyclic_from_count(const PrimeField& F, std::uint32_t A, std::uint32_t B, std::uint64_t N,
                       int two_torsion_points, const SpfSieve& spf) {
  const std::uint32_t p = F.p();
  FactoredInt fN = spf.factor(static_cast<std::uint32_t>(N));
  for (const auto& [l, e] : fN.factors) {
    if (e < 2) continue;
    if ((p - 1) % l != 0) continue;
    bool full;
    if (l == 2) {
      full = (two_torsion_points == 3);
    } else if (l <= 7) {
      full = full_odd_torsion(F, A, B, static_cast<std::uint32_t>(l));
    } else {
      full = full_torsion_by_sampling(F, A, B, N, l, e);
    }
    if (full) return false;
  }
  return true;
}

bool curve_is_cyclic(const WeierstrassCurve& curve, const SpfSieve& spf) {
  CharSweep s = char_sum_sweep(curve.field(), curve.b2(), curve.b4(), curve.b6());
  std::uint64_t N = static_cast<std::uint64_t>(curve.field().p() + 1 + s.chi_sum);
  WeierstrassCurve sh = curve.to_short();
  return cyclic_from_count(curve.field(), sh.A(), sh.B(), N, s.zeros, spf);
}

}  // namespace ecyc
