#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ecyc/families.hpp"
#include "ecyc/finite_curves.hpp"
#include "ecyc/rational.hpp"

namespace ecyc {

// One isomorphism class of curves over F_p: the lexicographically minimal
// short model, its group shape, automorphism-group size and the number of
// short models (A, B) in the class, which is (p-1)/aut.
struct CensusClass {
  std::uint32_t A = 0;
  std::uint32_t B = 0;
  GroupShape shape;
  int aut = 2;
  std::uint32_t model_count = 0;
};

// Exhaustive census of all nonsingular short models over F_p, grouped into
// isomorphism classes by orbit marking under (A, B) -> (u^4 A, u^6 B).
// Total model count is p^2 - p and total weighted mass sum 1/#Aut is p.
class Census {
 public:
  explicit Census(const PrimeField& F);  // rejects p <= 3

  std::uint32_t p() const { return p_; }
  const std::vector<CensusClass>& classes() const { return classes_; }

  std::uint64_t total_models() const;      // = p^2 - p
  Rational weighted_total() const;         // = p exactly
  Rational aut_weighted_total() const;     // sum 1/aut, computed from aut sizes

 private:
  std::uint32_t p_;
  std::vector<CensusClass> classes_;
};

// Census count for one predicate. Weighted cardinality is computed as
// model_count/(p-1), never by summing 1/#Aut class by class.
struct CensusRecord {
  std::uint32_t p = 0;
  std::string predicate;
  std::uint64_t model_count = 0;
  Rational weighted;
  std::uint64_t unweighted = 0;
};

// Curves whose group is cyclic with a point of order m.
CensusRecord count_C(const Census& c, std::uint64_t m);
// Curves with a point of order m.
CensusRecord count_T(const Census& c, std::uint64_t m);
// Curves with E[b](F_p) = Z/a x Z/b; requires a | b.
CensusRecord count_W(const Census& c, std::uint64_t a, std::uint64_t b);
// Curves with the given automorphism-group size.
CensusRecord count_aut(const Census& c, int aut);

struct ComparisonReport {
  CensusRecord record;
  Rational main_term;   // q * density (or 2q * density for unweighted)
  double abs_error = 0.0;
  double normalized_error = 0.0;  // abs_error / sqrt(p)
};

// Brute force against the corresponding main terms; all require p coprime
// to the modulus of the density formula.
ComparisonReport compare_C(const Census& c, std::uint64_t m);
ComparisonReport compare_C_unweighted(const Census& c, std::uint64_t m);
ComparisonReport compare_T(const Census& c, std::uint64_t m);
ComparisonReport compare_W(const Census& c, std::uint64_t a, std::uint64_t b);

// Per-parameter survey of the torsion family E_m(b) over F_p.
struct FamilyCensusRow {
  std::uint32_t b = 0;
  ParamValidity validity = ParamValidity::undefined;
  GroupShape shape;   // valid rows only
  bool cyclic = false;
  std::uint32_t marked_order = 0;
  int aut = 2;
};

struct FamilyCensus {
  std::uint32_t m = 0;
  std::uint32_t p = 0;
  std::vector<FamilyCensusRow> rows;
  std::uint64_t valid_count = 0;
  std::uint64_t cyclic_count = 0;  // s_m(p)
  std::uint64_t aut2 = 0, aut4 = 0, aut6 = 0;
};

FamilyCensus family_census(std::uint32_t m, const PrimeField& F);

// Cyclicity-only family sweep: counts valid parameters and cyclic curves
// without computing group shapes. This is the per-prime kernel of the
// density-mode average; spf must cover p + 2 sqrt(p) + 1.
struct FamilyCyclicCount {
  std::uint64_t valid = 0;
  std::uint64_t cyclic = 0;
};

FamilyCyclicCount family_cyclic_count(std::uint32_t m, const PrimeField& F, const SpfSieve& spf);

}  // namespace ecyc
