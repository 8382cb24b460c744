#include "ecyc/census.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ecyc/densities.hpp"

namespace ecyc {

Census::Census(const PrimeField& F) : p_(F.p()) {
  const std::uint32_t p = p_;
  // scaling tables for the twist action (A, B) -> (u^4 A, u^6 B)
  std::vector<std::uint32_t> u4(p, 0), u6(p, 0);
  for (std::uint32_t u = 1; u < p; ++u) {
    std::uint32_t u2 = F.mul(u, u);
    u4[u] = F.mul(u2, u2);
    u6[u] = F.mul(u4[u], u2);
  }
  std::vector<bool> visited(static_cast<std::size_t>(p) * p, false);
  const std::uint32_t c27 = 27 % p;
  for (std::uint32_t A = 0; A < p; ++A) {
    std::uint32_t A3_4 = F.mul(F.mul(F.mul(A, A), A), 4 % p);
    for (std::uint32_t B = 0; B < p; ++B) {
      if (visited[static_cast<std::size_t>(A) * p + B]) continue;
      if (F.add(A3_4, F.mul(c27, F.mul(B, B))) == 0) continue;  // singular
      // lexicographically first unvisited model is the canonical class rep
      std::uint32_t orbit = 0;
      for (std::uint32_t u = 1; u < p; ++u) {
        std::size_t idx = static_cast<std::size_t>(F.mul(u4[u], A)) * p + F.mul(u6[u], B);
        if (!visited[idx]) {
          visited[idx] = true;
          ++orbit;
        }
      }
      WeierstrassCurve E = WeierstrassCurve::short_form(F, A, B);
      CensusClass cls;
      cls.A = A;
      cls.B = B;
      cls.shape = E.group_structure();
      cls.aut = E.aut_size();
      cls.model_count = orbit;
      if (orbit != (p - 1) / cls.aut) {
        throw std::logic_error("Census: orbit size disagrees with automorphism count");
      }
      classes_.push_back(cls);
    }
  }
}

std::uint64_t Census::total_models() const {
  std::uint64_t t = 0;
  for (const auto& c : classes_) t += c.model_count;
  return t;
}

Rational Census::weighted_total() const {
  return ratio(static_cast<long long>(total_models()), p_ - 1);
}

Rational Census::aut_weighted_total() const {
  Rational t(0);
  for (const auto& c : classes_) t += ratio(1, c.aut);
  return t;
}

namespace {

template <class Pred>
CensusRecord count_by(const Census& c, std::string name, Pred pred) {
  CensusRecord rec;
  rec.p = c.p();
  rec.predicate = std::move(name);
  for (const CensusClass& cls : c.classes()) {
    if (!pred(cls)) continue;
    rec.model_count += cls.model_count;
    rec.unweighted += 1;
  }
  rec.weighted = ratio(static_cast<long long>(rec.model_count), c.p() - 1);
  return rec;
}

double sqrt_p(std::uint32_t p) { return std::sqrt(static_cast<double>(p)); }

ComparisonReport make_report(CensusRecord rec, Rational main_term, bool unweighted = false) {
  ComparisonReport rep;
  rep.record = std::move(rec);
  rep.main_term = std::move(main_term);
  Rational diff = unweighted
                      ? ratio(static_cast<long long>(rep.record.unweighted)) - rep.main_term
                      : rep.record.weighted - rep.main_term;
  rep.abs_error = std::abs(to_double(diff));
  rep.normalized_error = rep.abs_error / sqrt_p(rep.record.p);
  return rep;
}

}  // namespace

CensusRecord count_C(const Census& c, std::uint64_t m) {
  return count_by(c, "C:" + std::to_string(m), [m](const CensusClass& cls) {
    return is_cyclic(cls.shape) && has_point_of_order(cls.shape, m);
  });
}

CensusRecord count_T(const Census& c, std::uint64_t m) {
  return count_by(c, "T:" + std::to_string(m),
                  [m](const CensusClass& cls) { return has_point_of_order(cls.shape, m); });
}

CensusRecord count_W(const Census& c, std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b % a != 0) throw std::invalid_argument("count_W: need a | b");
  return count_by(c, "W:" + std::to_string(a) + ":" + std::to_string(b),
                  [a, b](const CensusClass& cls) { return in_torsion_class(cls.shape, a, b); });
}

CensusRecord count_aut(const Census& c, int aut) {
  return count_by(c, "aut:" + std::to_string(aut),
                  [aut](const CensusClass& cls) { return cls.aut == aut; });
}

ComparisonReport compare_C(const Census& c, std::uint64_t m) {
  Rational density = cyclic_mtors_density(c.p(), m);
  return make_report(count_C(c, m), ratio(c.p()) * density);
}

ComparisonReport compare_C_unweighted(const Census& c, std::uint64_t m) {
  Rational density = cyclic_mtors_density(c.p(), m);
  return make_report(count_C(c, m), ratio(2LL * c.p()) * density, /*unweighted=*/true);
}

ComparisonReport compare_T(const Census& c, std::uint64_t m) {
  return make_report(count_T(c, m), ratio(c.p()) * r_prime(c.p(), m));
}

ComparisonReport compare_W(const Census& c, std::uint64_t a, std::uint64_t b) {
  return make_report(count_W(c, a, b), w_hat(a, b, c.p()));
}

FamilyCensus family_census(std::uint32_t m, const PrimeField& F) {
  FamilyCensus out;
  out.m = m;
  out.p = F.p();
  out.rows.reserve(F.p());
  for (std::uint32_t b = 0; b < F.p(); ++b) {
    FamilyCensusRow row;
    row.b = b;
    FamilyCurve fc = family_curve(m, b, F);
    row.validity = fc.validity;
    if (fc.validity == ParamValidity::valid) {
      row.shape = fc.curve->group_structure();
      row.cyclic = is_cyclic(row.shape);
      row.marked_order = marked_point_order(m, b, F);
      row.aut = fc.curve->aut_size();
      ++out.valid_count;
      out.cyclic_count += row.cyclic ? 1 : 0;
      if (row.aut == 2) ++out.aut2;
      if (row.aut == 4) ++out.aut4;
      if (row.aut == 6) ++out.aut6;
    }
    out.rows.push_back(row);
  }
  return out;
}

FamilyCyclicCount family_cyclic_count(std::uint32_t m, const PrimeField& F,
                                      const SpfSieve& spf) {
  const FamilySpec& fam = FamilySpec::get(m);
  const std::uint32_t p = F.p();
  FamilyCyclicCount out;
  const std::uint32_t c24 = 24 % p, c27 = 27 % p, c36 = 36 % p, c54 = 54 % p, c216 = 216 % p;
  for (std::uint32_t b = 0; b < p; ++b) {
    std::uint32_t den1 = fam.a1.den.eval_mod(F, b);
    std::uint32_t den3 = fam.a3.den.eval_mod(F, b);
    if (den1 == 0 || den3 == 0) continue;  // undefined parameter
    bool undefined = false, singular = false;
    for (const auto& [poly, e] : fam.disc_factors) {
      if (poly.eval_mod(F, b) == 0) {
        (e < 0 ? undefined : singular) = true;
        break;
      }
    }
    if (undefined || singular) continue;
    ++out.valid;

    std::uint32_t a1 = F.mul(fam.a1.num.eval_mod(F, b), F.inv(den1));
    std::uint32_t a3 = F.mul(fam.a3.num.eval_mod(F, b), F.inv(den3));
    std::uint32_t a2 = a3;  // Tate normal form shares a2 = a3
    std::uint32_t B2 = F.add(F.mul(a1, a1), F.mul(4 % p, a2));
    std::uint32_t B4 = F.mul(a1, a3);
    std::uint32_t B6 = F.mul(a3, a3);
    CharSweep cs = char_sum_sweep(F, B2, B4, B6);
    std::uint64_t N = static_cast<std::uint64_t>(p + 1 + cs.chi_sum);

    std::uint32_t C4 = F.sub(F.mul(B2, B2), F.mul(c24, B4));
    std::uint32_t C6 =
        F.sub(F.add(F.neg(F.mul(F.mul(B2, B2), B2)), F.mul(c36, F.mul(B2, B4))), F.mul(c216, B6));
    std::uint32_t A = F.neg(F.mul(c27, C4));
    std::uint32_t Bs = F.neg(F.mul(c54, C6));
    if (cyclic_from_count(F, A, Bs, N, cs.zeros, spf)) ++out.cyclic;
  }
  return out;
}

}  // namespace ecyc
