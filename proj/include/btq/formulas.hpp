#pragma once

// Closed-form cusp counts and structure verdicts for H_D.

#include <cstdint>
#include <optional>
#include <string>

#include "btq/hecke.hpp"

namespace btq {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  bool is_integer() const noexcept { return den == 1; }
  bool operator==(const Rational&) const = default;
  std::string to_string() const;
};

Rational make_rational(std::int64_t num, std::int64_t den);

// Picard-group inputs; the defaults describe C = P^1 with deg(P_inf) = 1.
struct PicardData {
  std::uint64_t g2_order = 1;
  std::uint64_t index_theorem = 1;
  std::uint64_t index_lema4 = 1;
  std::optional<std::uint64_t> pic_R_order = 1;  // nullopt: infinite

  void validate() const;
};

enum class Verdict { finitely_generated, infinite_fp_part, out_of_theorem };

std::string to_string(Verdict v);

struct CuspCount {
  std::uint64_t c_HD = 0;
  bool exact = false;
  bool serre_case = false;
};

struct SplitCounts {
  std::uint64_t card_D = 0;
  std::uint64_t card_I = 0;
};

struct FormulaReport {
  std::optional<Rational> alpha;  // absent for D = 0
  std::uint64_t c_HD = 0;
  bool exact = false;
  bool serre_case = false;
  std::optional<SplitCounts> split;  // absent when the hypotheses fail
  Verdict abelianization = Verdict::out_of_theorem;
};

// 1 + (1/(q-1)) * sum over semi-decomposition vectors l != (n_1..n_r) of
// prod_{s_i != n_i} (q^{d_i} - 1) q^{d_i (n_i - s_i - 1)}.
Rational alpha(const Level& level, std::uint64_t q);

// 1 + (1/(q-1)) * prod (q^{d_i floor(n_i/2)} - 1). Agrees with alpha when r = 1
// or when every n_i <= 1.
Rational alpha_product_form(const Level& level, std::uint64_t q);

CuspCount cusp_count(const Level& level, std::uint64_t q, const PicardData& pic = {});
SplitCounts split_counts(const Level& level, std::uint64_t q, const PicardData& pic = {});
std::uint64_t classifying_cusp_count(const Level& level, std::uint64_t q, const PicardData& pic = {});
Verdict abelianization_verdict(const Level& level);

FormulaReport formula_report(const Level& level, std::uint64_t q, const PicardData& pic = {});
std::string format_report(const FormulaReport& r);

}  // namespace btq
