#include "btq/formulas.hpp"

#include <numeric>
#include <sstream>
#include <vector>

#include "btq/errors.hpp"

namespace btq {

namespace {

std::int64_t ipow(std::uint64_t base, int e) {
  std::int64_t out = 1;
  for (int i = 0; i < e; ++i) {
    if (out > (std::int64_t{1} << 62) / static_cast<std::int64_t>(base)) {
      throw SizeError("formula value overflows 64 bits");
    }
    out *= static_cast<std::int64_t>(base);
  }
  return out;
}

void require_nonzero(const Level& level, const char* what) {
  if (level.is_zero()) throw DomainError(std::string(what) + " is undefined for D = 0");
}

std::uint64_t integral(const Rational& r) {
  if (!r.is_integer() || r.num < 0) throw ConsistencyError("alpha is not a nonnegative integer: " + r.to_string());
  return static_cast<std::uint64_t>(r.num);
}

bool all_odd(const Level& level) {
  for (const auto& f : level.factors()) {
    if (f.multiplicity % 2 == 0) return false;
  }
  return true;
}

}  // namespace

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

std::string Rational::to_string() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

void PicardData::validate() const {
  if (g2_order == 0 || index_theorem == 0 || index_lema4 == 0 || (pic_R_order && *pic_R_order == 0)) {
    throw DomainError("Picard data entries must be positive");
  }
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::finitely_generated: return "finitely-generated";
    case Verdict::infinite_fp_part: return "infinite-Fp-part";
    case Verdict::out_of_theorem: return "out-of-theorem";
  }
  return "?";
}

Rational alpha(const Level& level, std::uint64_t q) {
  require_nonzero(level, "alpha");
  const auto& fs = level.factors();
  const std::size_t r = fs.size();
  std::vector<int> lo(r), s(r);
  for (std::size_t i = 0; i < r; ++i) {
    lo[i] = (fs[i].multiplicity + 1) / 2;
    s[i] = lo[i];
  }
  std::int64_t sum = 0;
  while (true) {
    bool top = true;
    std::int64_t term = 1;
    for (std::size_t i = 0; i < r; ++i) {
      const int n = fs[i].multiplicity;
      if (s[i] == n) continue;
      top = false;
      const int d = fs[i].prime.degree();
      term *= (ipow(q, d) - 1) * ipow(q, d * (n - s[i] - 1));
    }
    if (!top) sum += term;
    std::size_t i = 0;
    while (i < r && s[i] == fs[i].multiplicity) {
      s[i] = lo[i];
      ++i;
    }
    if (i == r) break;
    ++s[i];
  }
  const std::int64_t qm1 = static_cast<std::int64_t>(q) - 1;
  return make_rational(qm1 + sum, qm1);
}

Rational alpha_product_form(const Level& level, std::uint64_t q) {
  require_nonzero(level, "alpha");
  std::int64_t prod = 1;
  for (const auto& f : level.factors()) {
    prod *= ipow(q, f.prime.degree() * (f.multiplicity / 2)) - 1;
  }
  const std::int64_t qm1 = static_cast<std::int64_t>(q) - 1;
  return make_rational(qm1 + prod, qm1);
}

CuspCount cusp_count(const Level& level, std::uint64_t q, const PicardData& pic) {
  pic.validate();
  if (level.is_zero()) {
    if (!pic.pic_R_order) throw DomainError("Pic(R) is infinite: no finite cusp count");
    return {*pic.pic_R_order, true, true};
  }
  const std::uint64_t a = integral(alpha(level, q));
  const std::uint64_t c = (std::uint64_t{1} << level.prime_count()) * pic.g2_order * pic.index_theorem * a;
  return {c, pic.g2_order == 1 && all_odd(level), false};
}

SplitCounts split_counts(const Level& level, std::uint64_t q, const PicardData& pic) {
  require_nonzero(level, "split_counts");
  if (pic.g2_order != 1) throw PreconditionError("split_counts requires g(2) trivial");
  if (!all_odd(level)) throw PreconditionError("split_counts requires every multiplicity n_i odd");
  const CuspCount c = cusp_count(level, q, pic);
  const std::uint64_t d = (std::uint64_t{1} << level.prime_count()) * pic.index_theorem;
  if (d > c.c_HD) throw ConsistencyError("Card(D) exceeds the cusp count");
  return {d, c.c_HD - d};
}

std::uint64_t classifying_cusp_count(const Level& level, std::uint64_t q, const PicardData& pic) {
  require_nonzero(level, "classifying_cusp_count");
  pic.validate();
  return integral(alpha(level, q)) * pic.index_lema4;
}

Verdict abelianization_verdict(const Level& level) {
  bool all_one = true;
  for (const auto& f : level.factors()) {
    if (f.multiplicity % 2 == 0) return Verdict::out_of_theorem;
    if (f.multiplicity != 1) all_one = false;
  }
  return all_one ? Verdict::finitely_generated : Verdict::infinite_fp_part;
}

FormulaReport formula_report(const Level& level, std::uint64_t q, const PicardData& pic) {
  FormulaReport r;
  if (!level.is_zero()) r.alpha = alpha(level, q);
  const CuspCount c = cusp_count(level, q, pic);
  r.c_HD = c.c_HD;
  r.exact = c.exact;
  r.serre_case = c.serre_case;
  if (!level.is_zero() && pic.g2_order == 1 && all_odd(level)) r.split = split_counts(level, q, pic);
  r.abelianization = abelianization_verdict(level);
  return r;
}

std::string format_report(const FormulaReport& r) {
  std::ostringstream os;
  os << "alpha=" << (r.alpha ? r.alpha->to_string() : std::string("none")) << "\n";
  os << "c_HD=" << r.c_HD << "\n";
  os << "exact=" << (r.exact ? "true" : "false") << "\n";
  if (r.serre_case) os << "serre_case=true\n";
  if (r.split) {
    os << "card_D=" << r.split->card_D << "\n";
    os << "card_I=" << r.split->card_I << "\n";
  }
  os << "verdict=" << to_string(r.abelianization) << "\n";
  return os.str();
}

}  // namespace btq
