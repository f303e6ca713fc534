#include <random>

#include "btq/acceptance.hpp"
#include "btq/errors.hpp"
#include "btq/formulas.hpp"
#include "doctest.h"

using namespace btq;

namespace {

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::vector<std::pair<int, int>> shape(const Level& level) {
  std::vector<std::pair<int, int>> out;
  for (const auto& f : level.factors()) out.emplace_back(f.prime.degree(), f.multiplicity);
  return out;
}

}  // namespace

TEST_CASE("alpha examples") {
  const Field f3({3, 1, {}});
  CHECK(alpha(parse_level("(t^2+1)^3", f3), 3) == make_rational(5, 1));
  const Field f2({2, 1, {}});
  CHECK(alpha(parse_level("t^3", f2), 2) == make_rational(2, 1));
  CHECK(alpha(parse_level("t;t+1", f2), 2) == make_rational(1, 1));
  CHECK_THROWS_AS(alpha(Level(f2), 2), DomainError);
}

TEST_CASE("alpha as a lemma sum against a closed form") {
  // Summing the geometric pieces factor by factor telescopes to the product
  // of q^{d floor(n/2)}.
  const Field f2({2, 1, {}});
  const Field f3({3, 1, {}});
  for (auto [field, text] : std::vector<std::pair<const Field*, const char*>>{
           {&f2, "t^3;t+1"}, {&f2, "t^5;(t+1)^3"}, {&f2, "t^2;t^2+t+1"}, {&f3, "t^4;(t+1)^2"},
           {&f3, "t^3;(t^2+1)^3"}, {&f2, "t^7"}}) {
    const Level level = parse_level(text, *field);
    const std::uint64_t q = field->order();
    std::uint64_t prod = 1;
    for (const auto& fac : level.factors()) prod *= ipow(q, fac.prime.degree() * (fac.multiplicity / 2));
    CHECK(alpha(level, q) == make_rational(static_cast<std::int64_t>(q - 1 + prod - 1),
                                           static_cast<std::int64_t>(q - 1)));
  }
}

TEST_CASE("the printed product agrees with the sum for one prime or no repeated prime") {
  const Field f3({3, 1, {}});
  for (const char* text : {"t", "t^2", "t^5", "t;t+1;t+2", "(t^2+1)^3"}) {
    const Level level = parse_level(text, f3);
    CHECK(alpha(level, 3) == alpha_product_form(level, 3));
  }
  const Field f2({2, 1, {}});
  const Level mixed = parse_level("t^3;t+1", f2);
  CHECK(alpha(mixed, 2) == make_rational(2, 1));
  CHECK(alpha_product_form(mixed, 2) == make_rational(1, 1));
}

TEST_CASE("cusp count examples") {
  const Field f2({2, 1, {}});
  const Field f3({3, 1, {}});
  CuspCount c = cusp_count(parse_level("t", f2), 2);
  CHECK(c.c_HD == 2);
  CHECK(c.exact);
  c = cusp_count(parse_level("t;t+1", f2), 2);
  CHECK(c.c_HD == 4);
  CHECK(c.exact);
  c = cusp_count(parse_level("t^2", f3), 3);
  CHECK(c.c_HD == 4);
  CHECK_FALSE(c.exact);
  PicardData pic;
  pic.g2_order = 2;
  CHECK_FALSE(cusp_count(parse_level("t", f3), 3, pic).exact);
  CHECK(cusp_count(parse_level("t", f3), 3, pic).c_HD == 4);
}

TEST_CASE("D = 0 goes to the Picard group") {
  const Field f2({2, 1, {}});
  const CuspCount c = cusp_count(Level(f2), 2);
  CHECK(c.c_HD == 1);
  CHECK(c.exact);
  CHECK(c.serre_case);
  PicardData pic;
  pic.pic_R_order = 3;
  CHECK(cusp_count(Level(f2), 2, pic).c_HD == 3);
  pic.pic_R_order.reset();
  CHECK_THROWS_AS(cusp_count(Level(f2), 2, pic), DomainError);
  CHECK_THROWS_AS(classifying_cusp_count(Level(f2), 2), DomainError);
}

TEST_CASE("split counts") {
  const Field f2({2, 1, {}});
  const Field f3({3, 1, {}});
  const Field f4({2, 2, {}});
  SplitCounts s = split_counts(parse_level("t^3", f3), 3);
  CHECK(s.card_D == 2);
  CHECK(s.card_I == 2);
  s = split_counts(parse_level("t", f2), 2);
  CHECK(s.card_D == 2);
  CHECK(s.card_I == 0);
  // t^2+t+1 splits over F_4, so three distinct primes of degree one stand in.
  CHECK_THROWS_AS(parse_level("t^2+t+1", f4), ParseError);
  s = split_counts(parse_level("t;t+1;t+2", f4), 4);
  CHECK(s.card_D == 8);
  CHECK(s.card_I == 0);
  CHECK_THROWS_AS(split_counts(parse_level("t^2", f3), 3), PreconditionError);
  PicardData pic;
  pic.g2_order = 2;
  CHECK_THROWS_AS(split_counts(parse_level("t", f3), 3, pic), PreconditionError);
}

TEST_CASE("classifying cusp count") {
  const Field f2({2, 1, {}});
  const Field f3({3, 1, {}});
  CHECK(classifying_cusp_count(parse_level("t^3", f3), 3) == 2);
  CHECK(classifying_cusp_count(parse_level("t", f2), 2) == 1);
  PicardData pic;
  pic.index_lema4 = 2;
  CHECK(classifying_cusp_count(parse_level("(t^2+1)^3", f3), 3, pic) == 10);
}

TEST_CASE("abelianization verdicts") {
  const Field f3({3, 1, {}});
  CHECK(abelianization_verdict(parse_level("t", f3)) == Verdict::finitely_generated);
  CHECK(abelianization_verdict(parse_level("t^3", f3)) == Verdict::infinite_fp_part);
  CHECK(abelianization_verdict(parse_level("t^2", f3)) == Verdict::out_of_theorem);
  CHECK(abelianization_verdict(parse_level("t^3;(t+1)^2", f3)) == Verdict::out_of_theorem);
  CHECK(to_string(Verdict::infinite_fp_part) == "infinite-Fp-part");
}

TEST_CASE("cusp count matches the count on P1(k) for odd multiplicities") {
  std::mt19937_64 rng(7);
  for (std::uint64_t q : {2u, 3u, 4u, 5u, 7u}) {
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<std::pair<int, int>> factors;
      const int r = 1 + static_cast<int>(rng() % 3);
      for (int i = 0; i < r; ++i) factors.emplace_back(1 + static_cast<int>(rng() % 3), 1 + 2 * static_cast<int>(rng() % 3));
      // Shapes only matter here, so any monic irreducibles of the right degrees do.
      std::uint64_t prod = 1;
      for (auto [d, n] : factors) prod *= ipow(q, d * (n / 2));
      const std::uint64_t expected = (std::uint64_t{1} << r) * (1 + (prod - 1) / (q - 1));
      CHECK(classical_cusp_count(factors, q) == expected);
    }
  }
  const Field f3({3, 1, {}});
  for (const char* text : {"t", "t^3", "t;t+1", "t^3;(t+1)^5", "(t^2+1)^3;t"}) {
    const Level level = parse_level(text, f3);
    CHECK(classical_cusp_count(shape(level), 3) == cusp_count(level, 3).c_HD);
  }
}

TEST_CASE("report formatting") {
  const Field f3({3, 1, {}});
  const std::string text = format_report(formula_report(parse_level("t^3", f3), 3));
  CHECK(text.find("c_HD=4") != std::string::npos);
  CHECK(text.find("card_D=2") != std::string::npos);
  CHECK(text.find("card_I=2") != std::string::npos);
  CHECK(text.find("verdict=infinite-Fp-part") != std::string::npos);
}
