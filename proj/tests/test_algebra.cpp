#include <random>
#include <set>

#include "btq/algebra.hpp"
#include "btq/errors.hpp"
#include "doctest.h"

using namespace btq;

namespace {

// Product in F_p[x]/(m) computed digit by digit.
std::vector<std::uint32_t> slow_product(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                                        const std::vector<std::uint32_t>& m, std::uint32_t p) {
  const std::size_t s = m.size() - 1;
  std::vector<std::uint32_t> prod(2 * s, 0);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  for (std::size_t k = prod.size(); k-- > s;) {
    const std::uint32_t c = prod[k];
    for (std::size_t i = 0; i <= s; ++i) prod[k - s + i] = (prod[k - s + i] + (p - c) * m[i] % p) % p;
  }
  prod.resize(s);
  return prod;
}

}  // namespace

TEST_CASE("prime field arithmetic agrees with integers mod p") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    const Field f({p, 1, {}});
    for (std::uint32_t a = 0; a < p; ++a) {
      for (std::uint32_t b = 0; b < p; ++b) {
        CHECK(f.add({a}, {b}).code == (a + b) % p);
        CHECK(f.mul({a}, {b}).code == (a * b) % p);
        CHECK(f.sub({a}, {b}).code == (a + p - b) % p);
      }
      if (a != 0) CHECK(f.mul({a}, f.inv({a})) == f.one());
    }
  }
}

TEST_CASE("extension field multiplication matches schoolbook reduction") {
  for (auto [p, s] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 2u}, {5u, 2u}}) {
    const Field f({p, s, {}});
    CHECK(is_irreducible_over_prime_field(f.modulus(), p));
    for (auto a : f.elements()) {
      for (auto b : f.elements()) {
        CHECK(f.digits(f.mul(a, b)) == slow_product(f.digits(a), f.digits(b), f.modulus(), p));
      }
    }
  }
}

TEST_CASE("primitive element and discrete log") {
  const Field f({3, 2, {}});
  const auto g = f.primitive_element();
  std::set<std::uint32_t> seen;
  for (std::uint32_t k = 0; k < 8; ++k) seen.insert(f.pow(g, k).code);
  CHECK(seen.size() == 8);
  for (auto u : f.units()) CHECK(f.pow(g, f.discrete_log(u)) == u);
}

TEST_CASE("field construction rejects bad input") {
  CHECK_THROWS_AS(Field({4, 1, {}}), DomainError);
  CHECK_THROWS_AS(Field({2, 2, {1, 0, 1}}), DomainError);  // x^2 + 1 = (x + 1)^2 over F_2
  const Field f({3, 1, {}});
  CHECK_THROWS_AS(f.element(3), DomainError);
  CHECK_THROWS_AS(f.inv(f.zero()), DomainError);
}

TEST_CASE("polynomial division identity on random inputs") {
  const Field f({3, 1, {}});
  std::mt19937_64 rng(7);
  auto random_poly = [&](int deg) {
    std::vector<FieldElement> c;
    for (int i = 0; i <= deg; ++i) c.push_back({static_cast<std::uint32_t>(rng() % 3)});
    return Polynomial(f, c);
  };
  for (int i = 0; i < 200; ++i) {
    const Polynomial a = random_poly(static_cast<int>(rng() % 7));
    Polynomial b = random_poly(static_cast<int>(rng() % 4));
    if (b.is_zero()) continue;
    const DivMod qr = divmod(a, b);
    CHECK(qr.quotient * b + qr.remainder == a);
    CHECK(qr.remainder.degree() < b.degree());
    const Polynomial g = gcd(a, b);
    if (!g.is_zero()) {
      CHECK(divides(g, a));
      CHECK(divides(g, b));
    }
  }
}

TEST_CASE("irreducibility") {
  const Field f({2, 1, {}});
  CHECK(is_irreducible(parse_polynomial("t^2+t+1", f)));
  CHECK(is_irreducible(parse_polynomial("t^3+t+1", f)));
  CHECK_FALSE(is_irreducible(parse_polynomial("t^2+1", f)));
  CHECK_FALSE(is_irreducible(parse_polynomial("t^4+t^2+1", f)));
}

TEST_CASE("rational functions are kept in lowest terms") {
  const Field f({3, 1, {}});
  const RationalFunction x = parse_rational("(t+1)/(t^2+2)", f);
  CHECK(to_string(x) == "1/(t+2)");
  CHECK(x.valuation() == 1);
  CHECK((x * x.inverse()) == RationalFunction::constant(f, f.one()));
  CHECK(RationalFunction::pi_power(f, 2).valuation() == 2);
}

TEST_CASE("expansion at infinity") {
  const Field f({2, 1, {}});
  // 1/(t+1) = pi + pi^2 + pi^3 + ...
  const LaurentFragment x = expand_at_infinity(parse_rational("1/(t+1)", f), 4);
  REQUIRE(x.terms.size() == 3);
  CHECK(x.terms[0].first == 1);
  CHECK(x.terms[2].first == 3);

  const Field g({5, 1, {}});
  for (const char* text : {"(t^3+2)/(t^2+3*t+1)", "4/(t^4+t)", "t^2+t", "(2*t+1)/(3*t^2+4)"}) {
    const RationalFunction r = parse_rational(text, g);
    const LaurentFragment e = expand_at_infinity(r, 6);
    CHECK((to_rational(e, g) - r).valuation() >= 6);
  }
}

TEST_CASE("polynomial parser and printer") {
  const Field f({3, 1, {}});
  for (const char* text : {"t^2+2*t+1", "2*t^5+t", "1", "0", "t"}) {
    CHECK(to_string(parse_polynomial(text, f)) == text);
  }
  try {
    parse_polynomial("t^^2", f);
    FAIL("accepted a bad polynomial");
  } catch (const ParseError& e) {
    CHECK(e.position() == 2);
  }
  CHECK_THROWS_AS(parse_polynomial("5*t", f), ParseError);
  CHECK_THROWS_AS(parse_rational("1/0", f), ParseError);
}
