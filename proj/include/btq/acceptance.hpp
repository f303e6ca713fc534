#pragma once

// The acceptance battery: one result per criterion, shared by the test
// binary and `btq selftest`.

#include <cstdint>
#include <string>
#include <vector>

namespace btq {

struct CriterionResult {
  int number = 0;
  std::string title;
  bool pass = false;
  double seconds = 0;
  std::vector<std::string> details;
};

struct AcceptanceOptions {
  int threads = 1;
  std::uint64_t seed = 0x5eed2024;
  int cases = 200;  // per property suite
};

CriterionResult criterion_double_ray(const AcceptanceOptions& o);
CriterionResult criterion_nagao_baseline(const AcceptanceOptions& o);
CriterionResult criterion_cusp_formula(const AcceptanceOptions& o);
CriterionResult criterion_even_upper_bound(const AcceptanceOptions& o);
CriterionResult criterion_stabilizer_lemma(const AcceptanceOptions& o);
CriterionResult criterion_split_counts(const AcceptanceOptions& o);
CriterionResult criterion_amalgam(const AcceptanceOptions& o);
CriterionResult criterion_properties(const AcceptanceOptions& o);

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& o = {});

// "PASS  3  <title>  (0.12 s)" followed by indented details.
std::string format_result(const CriterionResult& r, bool with_details = true);

// Cusps of H_D counted on P^1(k) the classical way: for each monic d | N_D,
// the units of R/gcd(d, N_D/d) modulo F^*. Inputs are (deg P_i, n_i).
std::uint64_t classical_cusp_count(const std::vector<std::pair<int, int>>& factors, std::uint64_t q);

}  // namespace btq
