// ecyc: census and density experiments for elliptic curves over prime
// fields with prescribed torsion. Subcommands:
//   constants  family constants C_m and truncated Euler products
//   verify     exact identity sweeps, parameter-equivalence checks,
//              structural invariants (exit 1 on any violation)
//   census     per-prime isomorphism-class counts vs. their main terms
//   family     per-parameter table of one torsion family over F_p
//   avg        family averages (direct / density / mean-value modes)
// Exit codes: 0 success, 1 invariant violation, 2 invalid input.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <numeric>
#include <sstream>

#include "ecyc/averaging.hpp"
#include "ecyc/census.hpp"
#include "ecyc/csv.hpp"
#include "ecyc/densities.hpp"
#include "ecyc/families.hpp"
#include "ecyc/parallel.hpp"

using json = nlohmann::json;

namespace {

struct Output {
  std::string format = "csv";  // csv | json
  std::string path;            // empty = stdout
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::string, std::string>> config;

  void emit() const {
    std::ostream* os = &std::cout;
    std::ofstream file;
    std::string target = path;
    if (!target.empty()) {
      const char* dir = std::getenv("ECYC_OUT_DIR");
      if (dir && !target.empty() && target.front() != '/') {
        target = std::string(dir) + "/" + target;
      }
      file.open(target);
      if (!file) throw std::runtime_error("cannot open output file: " + target);
      os = &file;
    }
    if (format == "json") {
      json j;
      j["config"] = json::object();
      for (const auto& [k, v] : config) j["config"][k] = v;
      j["records"] = json::array();
      for (const auto& row : rows) {
        json r = json::object();
        for (std::size_t i = 0; i < columns.size(); ++i) r[columns[i]] = row[i];
        j["records"].push_back(std::move(r));
      }
      *os << j.dump(2) << '\n';
    } else {
      ecyc::CsvWriter w(*os, columns);
      for (const auto& row : rows) w.row(row);
      w.footer_config(config);
    }
  }
};

std::string rat_str(const ecyc::Rational& r) { return ecyc::to_string(r); }

std::string validity_str(ecyc::ParamValidity v) {
  switch (v) {
    case ecyc::ParamValidity::valid: return "valid";
    case ecyc::ParamValidity::singular: return "singular";
    default: return "undefined";
  }
}

void push_comparison(Output& out, const ecyc::ComparisonReport& rep) {
  const auto& rec = rep.record;
  out.rows.push_back({std::to_string(rec.p), rec.predicate, std::to_string(rec.model_count),
                      ecyc::to_string(ecyc::numerator(rec.weighted)),
                      ecyc::to_string(ecyc::denominator(rec.weighted)),
                      std::to_string(rec.unweighted),
                      ecyc::to_string(ecyc::numerator(rep.main_term)),
                      ecyc::to_string(ecyc::denominator(rep.main_term)),
                      ecyc::fmt_double(rep.abs_error), ecyc::fmt_double(rep.normalized_error)});
}

int run_constants(std::uint64_t L, const std::string& m_arg, Output& out) {
  out.columns = {"m", "c_m_num", "c_m_den", "euler_product", "truncation", "tail_bound",
                 "leading_coefficient"};
  std::vector<std::uint32_t> ms;
  if (m_arg == "all") {
    for (std::uint32_t m : ecyc::TorsionLabel::family_orders()) ms.push_back(m);
  } else {
    ms.push_back(static_cast<std::uint32_t>(std::stoul(m_arg)));
  }
  for (std::uint32_t m : ms) {
    ecyc::Rational cm = ecyc::c_m(m);
    ecyc::EulerProductResult ep = ecyc::euler_product(m, L);
    double coef = ecyc::to_double(cm) * static_cast<double>(ep.truncated_value);
    out.rows.push_back({std::to_string(m), ecyc::to_string(ecyc::numerator(cm)),
                        ecyc::to_string(ecyc::denominator(cm)),
                        ecyc::fmt_double(static_cast<double>(ep.truncated_value)),
                        std::to_string(ep.truncation_bound),
                        ecyc::fmt_double(static_cast<double>(ep.tail_bound)),
                        ecyc::fmt_double(coef)});
  }
  return 0;
}

int run_census(std::uint32_t p, const std::vector<std::uint32_t>& ms, std::uint32_t bmax,
               Output& out) {
  ecyc::PrimeField F(p);
  ecyc::Census census(F);
  out.columns = {"p",          "predicate",  "model_count",   "weighted_count_num",
                 "weighted_count_den",        "unweighted",    "main_term_num",
                 "main_term_den",             "abs_error",     "normalized_error"};
  for (std::uint32_t m : ms) {
    if (std::gcd<std::uint64_t>(m, p) != 1) continue;  // theory terms need p coprime to m
    push_comparison(out, ecyc::compare_C(census, m));
    push_comparison(out, ecyc::compare_T(census, m));
  }
  for (std::uint32_t b = 1; b <= bmax; ++b) {
    for (std::uint32_t a = 1; a <= b; ++a) {
      if (b % a != 0) continue;
      push_comparison(out, ecyc::compare_W(census, a, b));
    }
  }
  for (int aut : {2, 4, 6}) {
    ecyc::CensusRecord rec = ecyc::count_aut(census, aut);
    out.rows.push_back({std::to_string(rec.p), rec.predicate, std::to_string(rec.model_count),
                        ecyc::to_string(ecyc::numerator(rec.weighted)),
                        ecyc::to_string(ecyc::denominator(rec.weighted)),
                        std::to_string(rec.unweighted), "", "", "", ""});
  }
  return 0;
}

int run_family(std::uint32_t m, std::uint32_t p, Output& out) {
  ecyc::PrimeField F(p);
  const ecyc::FamilySpec& fam = ecyc::FamilySpec::get(m);
  out.config.emplace_back("a1", fam.a1.num.to_string() + "/" + fam.a1.den.to_string());
  out.config.emplace_back("a2", fam.a2.num.to_string() + "/" + fam.a2.den.to_string());
  out.config.emplace_back("a3", fam.a3.num.to_string() + "/" + fam.a3.den.to_string());
  std::ostringstream disc;
  for (const auto& [poly, e] : fam.disc_factors) disc << "(" << poly.to_string() << ")^" << e;
  out.config.emplace_back("disc", disc.str());

  ecyc::FamilyCensus fc = ecyc::family_census(m, F);
  out.columns = {"b", "validity", "N", "n1", "n2", "trace", "cyclic", "marked_order", "aut"};
  for (const auto& row : fc.rows) {
    if (row.validity != ecyc::ParamValidity::valid) {
      out.rows.push_back({std::to_string(row.b), validity_str(row.validity), "", "", "", "", "",
                          "", ""});
      continue;
    }
    out.rows.push_back({std::to_string(row.b), "valid", std::to_string(row.shape.N),
                        std::to_string(row.shape.n1), std::to_string(row.shape.n2),
                        std::to_string(row.shape.trace), row.cyclic ? "1" : "0",
                        std::to_string(row.marked_order), std::to_string(row.aut)});
  }
  out.config.emplace_back("valid", std::to_string(fc.valid_count));
  out.config.emplace_back("cyclic", std::to_string(fc.cyclic_count));
  out.config.emplace_back("aut_partition", std::to_string(fc.aut2) + "/" +
                                               std::to_string(fc.aut4) + "/" +
                                               std::to_string(fc.aut6));

  // parameter-equivalence verification for both conventions where they differ
  for (auto conv : {ecyc::MapConvention::printed, ecyc::MapConvention::sign_variant}) {
    ecyc::EquivalenceReport rep = ecyc::verify_parameter_equivalence(m, F, conv);
    std::string name = conv == ecyc::MapConvention::printed ? "printed" : "sign_variant";
    out.config.emplace_back("equivalence_" + name,
                            std::to_string(rep.discrepancies.size()) + " discrepancies");
    if (m != 7 && m != 9) break;  // conventions only differ for m = 7, 9
  }
  return 0;
}

int run_avg(std::uint32_t m, std::uint32_t x, std::uint64_t A, const std::string& mode,
            unsigned workers, Output& out) {
  if (mode == "meanvalue") {
    ecyc::SpfSieve spf(x);
    out.columns = {"m", "spec", "x", "measured", "predicted", "rel_error"};
    std::vector<std::pair<std::string, ecyc::MultiplicativeSpec>> specs;
    specs.emplace_back("F", ecyc::MultiplicativeSpec::forF(m));
    ecyc::TorsionLabel label = ecyc::TorsionLabel::of(m);
    if (!label.is_two_power()) {
      specs.emplace_back("Fprime", ecyc::MultiplicativeSpec::forFPrime(m));
      specs.emplace_back("chi", ecyc::MultiplicativeSpec::forChi(label.ell0));
    }
    for (const auto& [name, spec] : specs) {
      ecyc::MeanValueResult r = ecyc::mean_over_shifted_primes(spec, x, spf);
      double rel = std::abs(static_cast<double>(r.measured - r.predicted)) /
                   static_cast<double>(r.predicted);
      out.rows.push_back({std::to_string(m), name, std::to_string(x),
                          ecyc::fmt_double(static_cast<double>(r.measured)),
                          ecyc::fmt_double(static_cast<double>(r.predicted)),
                          ecyc::fmt_double(rel)});
    }
    return 0;
  }

  ecyc::AverageReport rep = mode == "direct" ? ecyc::average_direct(m, A, x, workers)
                                             : ecyc::average_density(m, x, workers);
  out.columns = {"p",        "valid_count",         "cyclic_count",
                 "density",  "cumulative_measured", "cumulative_predicted",
                 "relative_error"};
  for (const auto& row : rep.rows) {
    out.rows.push_back({std::to_string(row.p), std::to_string(row.valid_count),
                        std::to_string(row.cyclic_count), ecyc::fmt_double(row.density),
                        ecyc::fmt_double(row.cum_measured), ecyc::fmt_double(row.cum_predicted),
                        ecyc::fmt_double(row.rel_error)});
  }
  out.config.emplace_back("measured", ecyc::fmt_double(rep.measured));
  out.config.emplace_back("predicted", ecyc::fmt_double(rep.predicted));
  out.config.emplace_back("relative_error", ecyc::fmt_double(rep.relative_error));
  if (rep.mode == ecyc::AverageMode::direct) {
    out.config.emplace_back("parameters", std::to_string(rep.parameters));
    if (rep.regime_warning) {
      out.config.emplace_back("warning", "A <= x: outside the asymptotic regime A > x^(1+eps)");
    }
  }
  return 0;
}

struct VerifyFailure {
  std::string check;
  std::string detail;
};

int run_verify(std::uint64_t qmax, std::uint64_t mmax, std::uint32_t table3_pmax,
               std::uint32_t invariant_pmax, Output& out) {
  std::vector<VerifyFailure> failures;
  out.columns = {"check", "cases", "failures", "detail"};
  auto report = [&](const std::string& check, std::uint64_t cases,
                    const std::vector<VerifyFailure>& fails) {
    std::string detail = fails.empty() ? "ok" : fails.front().detail;
    out.rows.push_back({check, std::to_string(cases), std::to_string(fails.size()), detail});
    for (const auto& f : fails) failures.push_back(f);
  };

  // convolution identity and main-term chain
  {
    std::vector<VerifyFailure> fails;
    std::uint64_t cases = 0;
    for (std::uint32_t q : ecyc::primes_up_to(static_cast<std::uint32_t>(qmax))) {
      if (q < 5) continue;
      for (std::uint64_t m = 1; m <= mmax; ++m) {
        if (m % q == 0) continue;
        ++cases;
        if (!ecyc::verify_convolution(q, m)) {
          fails.push_back({"convolution", "q=" + std::to_string(q) + " m=" + std::to_string(m)});
        }
        if (ecyc::inclusion_exclusion_main_term(q, m) !=
            ecyc::ratio(q) * ecyc::cyclic_mtors_density(q, m)) {
          fails.push_back({"main_term_chain",
                           "q=" + std::to_string(q) + " m=" + std::to_string(m)});
        }
      }
    }
    report("convolution_and_chain", cases, fails);
  }

  // Table 2 constants
  {
    std::vector<VerifyFailure> fails;
    const std::pair<std::uint32_t, std::pair<long long, long long>> expected[] = {
        {4, {1, 2}}, {5, {19, 20}}, {6, {5, 12}}, {7, {41, 42}},
        {8, {1, 2}}, {9, {5, 6}},   {10, {19, 40}}, {12, {5, 12}}};
    for (const auto& [m, frac] : expected) {
      if (ecyc::c_m(m) != ecyc::ratio(frac.first, frac.second)) {
        fails.push_back({"c_m", "m=" + std::to_string(m)});
      }
    }
    report("family_constants", 8, fails);
  }

  // parameter equivalences
  {
    std::vector<VerifyFailure> fails;
    std::uint64_t cases = 0;
    for (std::uint32_t p : ecyc::primes_up_to(table3_pmax)) {
      if (p < 5) continue;
      ecyc::PrimeField F(p);
      for (std::uint32_t m : ecyc::TorsionLabel::family_orders()) {
        auto conv = (m == 7) ? ecyc::MapConvention::sign_variant : ecyc::MapConvention::printed;
        ecyc::EquivalenceReport rep = ecyc::verify_parameter_equivalence(m, F, conv);
        cases += rep.checked_parameters;
        if (!rep.discrepancies.empty()) {
          fails.push_back({"equivalence", "m=" + std::to_string(m) + " p=" + std::to_string(p) +
                                              " a=" + std::to_string(rep.discrepancies[0].a)});
        }
      }
    }
    report("parameter_equivalence", cases, fails);
  }

  // structural invariants over small fields
  {
    std::vector<VerifyFailure> fails;
    std::uint64_t cases = 0;
    for (std::uint32_t p : ecyc::primes_up_to(invariant_pmax)) {
      if (p < 5) continue;
      ecyc::PrimeField F(p);
      ecyc::Census census(F);
      if (census.weighted_total() != ecyc::ratio(p) ||
          census.aut_weighted_total() != ecyc::ratio(p)) {
        fails.push_back({"mass", "p=" + std::to_string(p)});
      }
      for (const auto& cls : census.classes()) {
        ++cases;
        const auto& s = cls.shape;
        bool obvious = true;  // cyclic iff no W(l, l) membership for l | p-1
        for (const auto& [l, e] : ecyc::factorize(p - 1).factors) {
          (void)e;
          if (ecyc::in_torsion_class(s, l, l)) obvious = false;
        }
        if (obvious != ecyc::is_cyclic(s)) {
          fails.push_back({"cyclicity", "p=" + std::to_string(p) +
                                            " A=" + std::to_string(cls.A) +
                                            " B=" + std::to_string(cls.B)});
        }
      }
    }
    report("structural_invariants", cases, fails);
  }

  if (!failures.empty()) {
    std::cerr << "verify: first failure: " << failures.front().check << " "
              << failures.front().detail << '\n';
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"elliptic-curve cyclicity census over prime fields"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "csv", outpath;
  unsigned workers = ecyc::par::default_workers();
  std::uint64_t seed = 20240801;  // fixed default seed for sampled suites
  app.add_option("--format", format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", outpath, "output file (default: stdout; relative to ECYC_OUT_DIR)");
  app.add_option("--threads", workers, "worker count");
  app.add_option("--seed", seed, "seed for randomized property suites");

  auto* constants = app.add_subcommand("constants", "family constants and Euler products");
  std::string m_arg = "all";
  std::uint64_t L = 1000000;
  constants->add_option("--m", m_arg, "torsion order or 'all'");
  constants->add_option("--L", L, "Euler-product truncation bound")->check(CLI::Range(2ull, 100000000ull));

  auto* census = app.add_subcommand("census", "isomorphism-class counts over F_p");
  std::uint32_t census_p = 5;
  std::uint32_t census_bmax = 6;
  std::vector<std::uint32_t> census_m = {1, 4, 5, 6, 7, 8, 9, 10, 12};
  census->add_option("--p", census_p, "prime field")->required();
  census->add_option("--m", census_m, "torsion orders to count");
  census->add_option("--bmax", census_bmax, "largest b for W(a,b) rows");

  auto* family = app.add_subcommand("family", "per-parameter family table over F_p");
  std::uint32_t fam_m = 5, fam_p = 11;
  family->add_option("--m", fam_m, "torsion order")->required();
  family->add_option("--p", fam_p, "prime field")->required();

  auto* avg = app.add_subcommand("avg", "family averages");
  std::uint32_t avg_m = 5, avg_x = 1000;
  std::uint64_t avg_A = 1000;
  std::string avg_mode = "density";
  avg->add_option("--m", avg_m, "torsion order")->required();
  avg->add_option("--x", avg_x, "prime bound x");
  avg->add_option("--A", avg_A, "parameter bound (direct mode)");
  avg->add_option("--mode", avg_mode, "density | direct | meanvalue")
      ->check(CLI::IsMember({"density", "direct", "meanvalue"}));

  auto* verify = app.add_subcommand("verify", "exact identity sweeps and invariants");
  std::uint64_t qmax = 500, mmax = 60;
  std::uint32_t table3_pmax = 61, invariant_pmax = 61;
  verify->add_option("--qmax", qmax, "largest prime in the identity sweeps");
  verify->add_option("--mmax", mmax, "largest m in the identity sweeps");
  verify->add_option("--table3-pmax", table3_pmax, "largest prime for the equivalence sweep");
  verify->add_option("--invariant-pmax", invariant_pmax, "largest prime for exhaustive invariants");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Output out;
  out.format = format;
  out.path = outpath;
  // worker count is intentionally absent: outputs are byte-identical
  // across thread counts
  out.config.emplace_back("seed", std::to_string(seed));
  out.config.emplace_back("format", format);

  try {
    int rc = 0;
    if (constants->parsed()) {
      out.config.emplace_back("subcommand", "constants");
      out.config.emplace_back("m", m_arg);
      out.config.emplace_back("L", std::to_string(L));
      rc = run_constants(L, m_arg, out);
    } else if (census->parsed()) {
      out.config.emplace_back("subcommand", "census");
      out.config.emplace_back("p", std::to_string(census_p));
      rc = run_census(census_p, census_m, census_bmax, out);
    } else if (family->parsed()) {
      out.config.emplace_back("subcommand", "family");
      out.config.emplace_back("m", std::to_string(fam_m));
      out.config.emplace_back("p", std::to_string(fam_p));
      rc = run_family(fam_m, fam_p, out);
    } else if (avg->parsed()) {
      out.config.emplace_back("subcommand", "avg");
      out.config.emplace_back("m", std::to_string(avg_m));
      out.config.emplace_back("x", std::to_string(avg_x));
      out.config.emplace_back("mode", avg_mode);
      if (avg_mode == "direct") out.config.emplace_back("A", std::to_string(avg_A));
      rc = run_avg(avg_m, avg_x, avg_A, avg_mode, workers, out);
    } else if (verify->parsed()) {
      out.config.emplace_back("subcommand", "verify");
      out.config.emplace_back("qmax", std::to_string(qmax));
      out.config.emplace_back("mmax", std::to_string(mmax));
      rc = run_verify(qmax, mmax, table3_pmax, invariant_pmax, out);
    }
    out.emit();
    return rc;
  } catch (const std::invalid_argument& e) {
    std::cerr << "ecyc: invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "ecyc: " << e.what() << '\n';
    return 1;
  }
}
