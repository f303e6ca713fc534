#include <deque>
#include <random>
#include <unordered_map>

#include "btq/btree.hpp"
#include "btq/errors.hpp"
#include "doctest.h"

using namespace btq;

namespace {

int min_valuation(const Matrix2& m) {
  return std::min({m.a.valuation(), m.b.valuation(), m.c.valuation(), m.d.valuation()});
}

// Two bases span homothetic lattices iff B^{-1} M lies in K^* GL2(O).
bool same_lattice_class(const Matrix2& b, const Matrix2& m) {
  const Matrix2 x = b.inverse() * m;
  return x.det().valuation() == 2 * min_valuation(x);
}

Matrix2 random_matrix(const Field& f, std::mt19937_64& rng) {
  auto entry = [&] {
    std::vector<FieldElement> num;
    std::vector<FieldElement> den;
    for (int i = 0, n = static_cast<int>(rng() % 4); i <= n; ++i) num.push_back({static_cast<std::uint32_t>(rng() % f.order())});
    for (int i = 0, n = static_cast<int>(rng() % 3); i < n; ++i) den.push_back({static_cast<std::uint32_t>(rng() % f.order())});
    den.push_back(f.one());
    return RationalFunction(Polynomial(f, num), Polynomial(f, den));
  };
  while (true) {
    Matrix2 m{entry(), entry(), entry(), entry()};
    if (!m.det().is_zero()) return m;
  }
}

int bfs(const BallVertex& v, const BallVertex& w, int radius, const Field& f) {
  std::unordered_map<BallVertex, int, VertexHash> seen{{v, 0}};
  std::deque<BallVertex> queue{v};
  while (!queue.empty()) {
    const BallVertex x = queue.front();
    queue.pop_front();
    if (x == w) return seen.at(x);
    if (seen.at(x) == radius) continue;
    for (const auto& y : neighbors(x, f)) {
      if (seen.emplace(y, seen.at(x) + 1).second) queue.push_back(y);
    }
  }
  return -1;
}

}  // namespace

TEST_CASE("canonical form spans the same lattice class") {
  std::mt19937_64 rng(11);
  for (auto [p, s] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}}) {
    const Field f({p, s, {}});
    for (int i = 0; i < 200; ++i) {
      const Matrix2 m = random_matrix(f, rng);
      const BallVertex v = canonicalize(m);
      CHECK(same_lattice_class(lattice_basis(v, f), m));
      CHECK(canonicalize(lattice_basis(v, f)) == v);
    }
  }
}

TEST_CASE("canonicalize examples") {
  const Field f({2, 1, {}});
  const Polynomial t = Polynomial::t(f);
  const Polynomial one = Polynomial::constant(f, f.one());
  const Polynomial zero(f);
  // <(t, 1), (1, 0)> is the ball of radius 1 around t.
  CHECK(format_vertex(canonicalize(Matrix2::from_polynomials(t, one, one, zero))) == "r=0;a=1*s^-1");
  CHECK(canonicalize(Matrix2::identity(f)) == nagao_vertex(0));
}

TEST_CASE("distance examples") {
  const Field f({2, 1, {}});
  const BallVertex a = parse_vertex("r=2;a=1*s^1", f);
  CHECK(distance(nagao_vertex(0), a, f) == 2);
  CHECK(lattice_distance(nagao_vertex(0), a, f) == 2);
  CHECK(distance(nagao_vertex(3), nagao_vertex(-2), f) == 5);
}

TEST_CASE("ball, lattice and path distances agree") {
  std::mt19937_64 rng(5);
  const Field f({3, 1, {}});
  for (int i = 0; i < 200; ++i) {
    BallVertex v = nagao_vertex(static_cast<int>(rng() % 5) - 2);
    for (int k = static_cast<int>(rng() % 4); k > 0; --k) v = neighbors(v, f)[rng() % 4];
    BallVertex w = v;
    for (int k = static_cast<int>(rng() % 6); k > 0; --k) w = neighbors(w, f)[rng() % 4];
    const int d = distance(v, w, f);
    CHECK(d == lattice_distance(v, w, f));
    CHECK(d == bfs(v, w, 6, f));
  }
}

TEST_CASE("neighbors form a star of size q + 1") {
  const Field f({5, 1, {}});
  const BallVertex v = parse_vertex("r=1;a=2*s^-2+1*s^0", f);
  const auto nb = neighbors(v, f);
  REQUIRE(nb.size() == 6);
  CHECK(nb[0] == parent(v));
  for (const auto& w : nb) {
    CHECK(distance(v, w, f) == 1);
    CHECK(std::count(nb.begin(), nb.end(), w) == 1);
  }
  for (std::size_t i = 1; i < nb.size(); ++i) CHECK(parent(nb[i]) == v);
}

TEST_CASE("action respects the group law and moves balls as expected") {
  const Field f({3, 1, {}});
  const Polynomial one = Polynomial::constant(f, f.one());
  const Polynomial zero(f);
  const Polynomial t = Polynomial::t(f);
  const Matrix2 tau = Matrix2::from_polynomials(one, -t, zero, one);
  const Matrix2 inv = Matrix2::from_polynomials(zero, one, one, zero);
  const BallVertex v = parse_vertex("r=1;a=1*s^-1+2*s^0", f);
  // tau_t B_s = B_{s - t}
  CHECK(format_vertex(act(tau, v)) == "r=1;a=2*s^0");
  CHECK(act(inv, nagao_vertex(2)) == nagao_vertex(-2));
  CHECK(act(tau * inv, v) == act(tau, act(inv, v)));
}

TEST_CASE("moebius action on ends") {
  const Field f({3, 1, {}});
  const Polynomial one = Polynomial::constant(f, f.one());
  const Polynomial zero(f);
  const Matrix2 inv = Matrix2::from_polynomials(zero, one, one, zero);
  CHECK(moebius(inv, RationalEnd{}).value == RationalFunction::constant(f, f.zero()));
  CHECK(moebius(inv, RationalEnd{RationalFunction::constant(f, f.zero())}).is_infinity());
}

TEST_CASE("vertex text round trip and errors") {
  const Field f({3, 1, {}});
  for (const char* text : {"r=2;a=1*s^-1", "r=0;a=0", "r=-3;a=2*s^-5+1*s^-4"}) {
    CHECK(format_vertex(parse_vertex(text, f)) == text);
  }
  CHECK_THROWS_AS(parse_vertex("r=;a=0", f), ParseError);
  CHECK_THROWS_AS(parse_vertex("r=1;a=7*s^0", f), ParseError);
}
