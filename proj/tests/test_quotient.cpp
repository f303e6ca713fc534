#include "btq/errors.hpp"
#include "btq/quotient.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace btq;

TEST_CASE("D = t over F_2 is a double ray") {
  const Field f({2, 1, {}});
  QuotientGraph q = build_quotient(parse_level("t", f), 10);
  CHECK(q.classes.size() == 21);
  CHECK(q.edges.size() == 20);
  CHECK(is_path(q));
  CHECK_FALSE(is_ray_from_base(q));
  CHECK(q.classes[0].stab.order() == 2);
  CHECK(q.classes[0].valency() == 2);
  CHECK_FALSE(q.classes[19].valency().has_value());
  q.cusps = certify_cusps(q, 3);
  CHECK(q.cusps.size() == 2);
  for (const auto& c : q.cusps) {
    REQUIRE(c.stab_tower.size() == 4);
    for (std::size_t i = 1; i < c.stab_tower.size(); ++i) CHECK(c.stab_tower[i] == 2 * c.stab_tower[i - 1]);
  }
}

TEST_CASE("D = 0 is a ray from v0") {
  const Field f({3, 1, {}});
  const QuotientGraph q = build_quotient(Level(f), 6);
  CHECK(is_ray_from_base(q));
  CHECK(q.classes.size() == 7);
  CHECK(q.classes[0].stab.order() == 48);
}

TEST_CASE("built graphs satisfy the local checks") {
  const Field f2({2, 1, {}});
  const Field f3({3, 1, {}});
  for (auto [field, text] : std::vector<std::pair<const Field*, const char*>>{
           {&f2, "t^2"}, {&f2, "t;t+1"}, {&f2, "t^3"}, {&f3, "t"}, {&f3, "t^2"}, {&f3, "t;t+1"}}) {
    const QuotientGraph q = build_quotient(parse_level(text, *field), 7);
    CHECK(edge_consistency_violations(q).empty());
    CHECK(neighbor_accounting_violations(q).empty());
    CHECK(bipartite_violations(q).empty());
    for (const auto& c : q.classes) {
      for (const auto& o : c.orbits) {
        const auto& target = q.classes[static_cast<std::size_t>(o.target)];
        CHECK(is_member(o.witness, q.level));
        CHECK(act(o.witness, target.representative) == o.vertex);
      }
    }
  }
}

TEST_CASE("cusp counts from certification") {
  const Field f2({2, 1, {}});
  const Field f3({3, 1, {}});
  for (auto [field, text, expected] : std::vector<std::tuple<const Field*, const char*, std::size_t>>{
           {&f2, "t", 2}, {&f2, "t;t+1", 4}, {&f2, "t^2", 3}, {&f3, "t", 2}, {&f3, "t^3", 4}}) {
    QuotientGraph q = build_quotient(parse_level(text, *field), 12);
    CHECK(certify_cusps(q, 3).size() == expected);
  }
}

TEST_CASE("thread count does not change the output") {
  const Field f({3, 1, {}});
  const Level level = parse_level("t^2", f);
  QuotientGraph a = build_quotient(level, 8, {1});
  QuotientGraph b = build_quotient(level, 8, {4});
  a.cusps = certify_cusps(a, 3);
  b.cusps = certify_cusps(b, 3);
  CHECK(export_text(a) == export_text(b));
  CHECK(export_json(a) == export_json(b));
  CHECK(export_dot(a) == export_dot(b));
}

TEST_CASE("JSON export carries the documented keys") {
  const Field f({2, 1, {}});
  QuotientGraph q = build_quotient(parse_level("t", f), 6);
  q.cusps = certify_cusps(q, 3);
  const auto j = nlohmann::json::parse(export_json(q));
  CHECK(j["field"]["p"] == 2);
  CHECK(j["level"] == "t");
  CHECK(j["classes"].size() == q.classes.size());
  CHECK(j["edges"].size() == q.edges.size());
  CHECK(j["cusps"].size() == 2);
  CHECK(j["classes"][0]["stab_order"] == 2);
  CHECK(j["classes"].back()["valency"].is_null());
}

TEST_CASE("bounds") {
  const Field f({2, 1, {}});
  CHECK_THROWS_AS(build_quotient(parse_level("t", f), 0), BoundError);
  const QuotientGraph q = build_quotient(parse_level("t", f), 4);
  CHECK_THROWS_AS(certify_cusps(q, 3), BoundError);
  CHECK_THROWS_AS(certify_cusps(q, 1), BoundError);
}
