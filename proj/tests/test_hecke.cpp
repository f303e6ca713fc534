#include <deque>
#include <set>
#include <unordered_set>

#include "btq/errors.hpp"
#include "btq/hecke.hpp"
#include "doctest.h"

using namespace btq;

namespace {

std::vector<BallVertex> ball_around(const BallVertex& v, int radius, const Field& f) {
  std::vector<BallVertex> out{v};
  std::unordered_set<BallVertex, VertexHash> seen{v};
  std::size_t begin = 0;
  for (int d = 0; d < radius; ++d) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (const auto& w : neighbors(out[i], f)) {
        if (seen.insert(w).second) out.push_back(w);
      }
    }
    begin = end;
  }
  return out;
}

}  // namespace

TEST_CASE("level parsing") {
  const Field f({3, 1, {}});
  const Level a = parse_level("t^3", f);
  REQUIRE(a.factors().size() == 1);
  CHECK(a.factors()[0].multiplicity == 3);
  CHECK(a.degree() == 3);
  CHECK(parse_level("(t+1)^2;t", f).degree() == 3);
  CHECK(parse_level("", f).is_zero());
  CHECK(parse_level("0", f).is_zero());
  CHECK_THROWS_AS(parse_level("t^2+t", f), ParseError);
  CHECK_THROWS_AS(parse_level("t;t", f), ParseError);
}

TEST_CASE("membership in H_D") {
  const Field f({2, 1, {}});
  const Level d = parse_level("t", f);
  const Polynomial one = Polynomial::constant(f, f.one());
  const Polynomial zero(f);
  const Polynomial t = Polynomial::t(f);
  CHECK(is_member(Matrix2::from_polynomials(one, t, t, t * t + one), d));
  CHECK_FALSE(is_member(Matrix2::from_polynomials(zero, one, one, zero), d));
  CHECK_FALSE(is_member(Matrix2::from_polynomials(t, zero, zero, one), d));
}

TEST_CASE("reduction onto the Nagao ray") {
  const Field f({2, 1, {}});
  const ReductionResult r = reduce(parse_vertex("r=2;a=1*s^-1", f), f);
  CHECK(r.level_n == 2);
  REQUIRE(r.word.size() == 2);
  CHECK(r.word[0].to_string() == "tau[t]");
  CHECK(r.word[1].to_string() == "I");
  for (const auto& v : ball_around(nagao_vertex(0), 5, f)) {
    const ReductionResult red = reduce(v, f);
    CHECK(act(red.g, v) == nagao_vertex(red.level_n));
    CHECK(red.g.is_polynomial());
  }
}

TEST_CASE("stabilizer examples") {
  const Field f3({3, 1, {}});
  CHECK(stabilizer(nagao_vertex(0), parse_level("t", f3)).order() == 12);
  const Field f2({2, 1, {}});
  const StabDescriptor s = stabilizer(nagao_vertex(0), parse_level("t", f2));
  CHECK(s.order() == 2);
  CHECK(stabilizer(nagao_vertex(0), Level(f3)).order() == 48);
  CHECK(full_stabilizer_order(0, 3) == 48);
  CHECK(full_stabilizer_order(2, 3) == 108);
}

TEST_CASE("solver agrees with brute force near v0") {
  for (std::uint32_t p : {2u, 3u}) {
    const Field f({p, 1, {}});
    for (const char* text : {"t", "t^2", "t;t+1"}) {
      const Level level = parse_level(text, f);
      for (const auto& v : ball_around(nagao_vertex(0), p == 2 ? 4 : 3, f)) {
        if (reduce(v, f).level_n > 4) continue;
        const StabDescriptor sd = stabilizer(v, level);
        const auto brute = stabilizer_brute(v, level);
        CHECK(brute.size() == sd.order());
        for (const auto& m : brute) CHECK(sd.contains(m));
      }
    }
  }
}

TEST_CASE("orbit test agrees with brute force and returns working witnesses") {
  const Field f({2, 1, {}});
  for (const char* text : {"t", "t^2", "t;t+1"}) {
    const Level level = parse_level(text, f);
    const auto vs = ball_around(nagao_vertex(0), 3, f);
    for (const auto& v : vs) {
      for (const auto& w : vs) {
        if (reduce(v, f).level_n > 4 || reduce(w, f).level_n > 4) continue;
        const auto h = orbit_equivalent(v, w, level);
        const auto b = orbit_equivalent_brute(v, w, level);
        CHECK(h.has_value() == b.has_value());
        if (h) {
          CHECK(is_member(*h, level));
          CHECK(act(*h, v) == w);
        }
      }
    }
  }
}

TEST_CASE("generators, words and materialization") {
  const Field f({3, 1, {}});
  const Level level = parse_level("t^2", f);
  for (const auto& v : ball_around(nagao_vertex(0), 2, f)) {
    const StabDescriptor sd = stabilizer(v, level);
    const auto gens = generators(sd);
    const auto frames = generator_frames(sd);
    const auto elements = materialize(sd, 100000);
    CHECK(elements.size() == sd.order());
    std::set<std::string> distinct;
    for (const auto& x : elements) {
      distinct.insert(format_matrix(x));
      CHECK(act(x, v) == v);
      CHECK(evaluate(express(sd, sd.to_frame(x)), frames, f) == sd.to_frame(x));
    }
    CHECK(distinct.size() == elements.size());
    for (const auto& g : gens) CHECK(is_member(g, level));
  }
  CHECK_THROWS_AS(materialize(stabilizer(nagao_vertex(6), level), 10), SizeError);
}

TEST_CASE("pointwise stabilizer of a vertex and a neighbor") {
  const Field f({3, 1, {}});
  const Level level = parse_level("t", f);
  const BallVertex v0 = nagao_vertex(0);
  const BallVertex w = neighbors(v0, f)[1];
  const StabDescriptor edge = stabilizer(v0, level, {w});
  CHECK(edge.order() == 4);
  for (const auto& x : materialize(edge, 100)) {
    CHECK(act(x, v0) == v0);
    CHECK(act(x, w) == w);
  }
}
