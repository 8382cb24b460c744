#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ecyc/census.hpp"
#include "ecyc/densities.hpp"

using namespace ecyc;

TEST_SUITE_BEGIN("census");

TEST_CASE("census over F_5") {
  PrimeField F(5);
  Census c(F);
  CHECK(c.total_models() == 5 * 5 - 5);
  CHECK(c.weighted_total() == ratio(5));
  CHECK(c.aut_weighted_total() == ratio(5));
  // the class of y^2 = x^3 + x has shape (2, 2)
  bool found = false;
  for (const auto& cls : c.classes()) {
    if (cls.A == 1 && cls.B == 0) {
      found = true;
      CHECK(cls.shape.n1 == 2);
      CHECK(cls.shape.n2 == 2);
    }
    CHECK(cls.model_count == (5u - 1) / static_cast<std::uint32_t>(cls.aut));
  }
  CHECK(found);
}

TEST_CASE("singular locus has exactly p models") {
  for (std::uint32_t p : {5u, 7u, 11u, 13u}) {
    PrimeField F(p);
    Census c(F);
    CHECK(c.total_models() == static_cast<std::uint64_t>(p) * p - p);
  }
}

TEST_CASE("mass formula and aut partition") {
  for (std::uint32_t p : primes_up_to(61)) {
    if (p < 5) continue;
    PrimeField F(p);
    Census c(F);
    CHECK(c.weighted_total() == ratio(p));
    CHECK(c.aut_weighted_total() == ratio(p));
    // unweighted - 2 weighted = #aut4/2 + 2 #aut6/3, exactly
    CensusRecord all = count_W(c, 1, 1);
    CensusRecord a4 = count_aut(c, 4), a6 = count_aut(c, 6);
    Rational lhs = ratio(all.unweighted) - ratio(2) * all.weighted;
    Rational rhs = ratio(a4.unweighted, 2) + ratio(2) * ratio(a6.unweighted, 3);
    CHECK(lhs == rhs);
    CHECK(ratio(all.unweighted) >= ratio(2) * all.weighted);
  }
}

TEST_CASE("count_W basics") {
  PrimeField F(5);
  Census c(F);
  CensusRecord everything = count_W(c, 1, 1);
  CHECK(everything.weighted == ratio(5));
  CHECK(everything.model_count == 20);
  CHECK_THROWS_AS(count_W(c, 2, 5), std::invalid_argument);
  // weighted count vs the torsion-subgroup density main term
  ComparisonReport w22 = compare_W(c, 2, 2);
  CHECK(w22.main_term == ratio(5) * w_tilde(2, 2, 5));
  CHECK(w22.normalized_error < 4 * 2);
}

TEST_CASE("count_T against its main term over F_7") {
  PrimeField F(7);
  Census c(F);
  ComparisonReport t5 = compare_T(c, 5);
  CHECK(t5.main_term == ratio(7, 4));
  CHECK(t5.normalized_error <= 4 * 25);
  // w_tilde = 0 predicts an exactly empty class: gcd(4, 6) = 2 < 4
  CHECK(w_tilde(4, 4, 7) == ratio(0));
  CHECK(count_W(c, 4, 4).model_count == 0);
}

TEST_CASE("every 5-torsion curve over F_5 is cyclic") {
  PrimeField F(5);
  Census c(F);
  CensusRecord c5 = count_C(c, 5);
  CensusRecord t5 = count_T(c, 5);
  CHECK(c5.model_count == t5.model_count);
  CHECK(c5.unweighted == t5.unweighted);
  CHECK(t5.unweighted > 0);
}

TEST_CASE("cyclic count compare over F_5") {
  PrimeField F(5);
  Census c(F);
  ComparisonReport rep = compare_C(c, 1);
  // density for m = 1 at p = 5: only l = 2 divides p - 1
  CHECK(rep.main_term == ratio(5) * ratio(5, 6));
  CHECK(rep.normalized_error <= 10.0);
  ComparisonReport larger = compare_C(Census(PrimeField(101)), 5);
  CHECK(std::isfinite(larger.normalized_error));
  CHECK_THROWS_AS(compare_C(c, 5), std::invalid_argument);  // p | m has no density
}

TEST_CASE("unweighted counts track 2q times the density") {
  // the unweighted count differs from twice the weighted one only by the
  // O(1) extra-automorphism classes
  for (std::uint32_t p : {61u, 101u, 151u}) {
    PrimeField F(p);
    Census c(F);
    for (std::uint64_t m : {1ull, 5ull, 8ull}) {
      ComparisonReport rep = compare_C_unweighted(c, m);
      CHECK(rep.normalized_error <= 25.0);
      CensusRecord a4 = count_aut(c, 4), a6 = count_aut(c, 6);
      CHECK(a4.unweighted + a6.unweighted <= 10);
    }
  }
}

TEST_CASE("count_C <= count_T pointwise") {
  for (std::uint32_t p : {5u, 7u, 11u, 13u, 17u}) {
    PrimeField F(p);
    Census c(F);
    for (std::uint64_t m = 1; m <= 10; ++m) {
      CHECK(count_C(c, m).weighted <= count_T(c, m).weighted);
    }
  }
}

TEST_CASE("family census over F_5 for m = 5") {
  PrimeField F(5);
  FamilyCensus fc = family_census(5, F);
  CHECK(fc.valid_count == 3);
  CHECK(fc.cyclic_count == 3);
  std::vector<std::uint32_t> valid;
  for (const auto& row : fc.rows) {
    if (row.validity == ParamValidity::valid) {
      valid.push_back(row.b);
      CHECK(row.cyclic);
      CHECK(row.marked_order == 5);
    }
  }
  CHECK(valid == std::vector<std::uint32_t>{1, 2, 4});
}

TEST_CASE("fast family count agrees with the full table") {
  SpfSieve spf(2500);
  for (std::uint32_t p : primes_up_to(97)) {
    if (p < 5) continue;
    PrimeField F(p);
    for (std::uint32_t m : TorsionLabel::family_orders()) {
      FamilyCensus slow = family_census(m, F);
      FamilyCyclicCount fast = family_cyclic_count(m, F, spf);
      CHECK(fast.valid == slow.valid_count);
      CHECK(fast.cyclic == slow.cyclic_count);
    }
  }
  // spot-check a couple of larger fields
  for (std::uint32_t p : {101u, 199u, 211u}) {
    PrimeField F(p);
    FamilyCensus slow = family_census(5, F);
    FamilyCyclicCount fast = family_cyclic_count(5, F, spf);
    CHECK(fast.valid == slow.valid_count);
    CHECK(fast.cyclic == slow.cyclic_count);
  }
}

TEST_CASE("family aut partition stays O(1)") {
  for (std::uint32_t p : {11u, 31u, 61u, 101u}) {
    PrimeField F(p);
    for (std::uint32_t m : TorsionLabel::family_orders()) {
      FamilyCensus fc = family_census(m, F);
      CHECK(fc.aut4 + fc.aut6 <= 48);
      CHECK(fc.aut2 + fc.aut4 + fc.aut6 == fc.valid_count);
    }
  }
}

TEST_SUITE_END();
