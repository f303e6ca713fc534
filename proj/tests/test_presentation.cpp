#include "btq/errors.hpp"
#include "btq/presentation.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace btq;

namespace {

QuotientGraph certified(const Level& level, int depth) {
  QuotientGraph q = build_quotient(level, depth);
  q.cusps = certify_cusps(q, 3);
  return q;
}

void check_relations(const Presentation& p, const Field& f) {
  for (const auto& r : p.relations) {
    CHECK_MESSAGE(evaluate_word(r.word, p.generators, f) == Matrix2::identity(f), r.label);
  }
}

}  // namespace

TEST_CASE("word reduction") {
  CHECK(reduce_word({{"a", 1}, {"a", -1}}).empty());
  CHECK(reduce_word({{"a", 1}, {"a", 2}}) == Word{{"a", 3}});
  CHECK(reduce_word({{"b", 1}, {"a", 1}, {"a", -1}, {"b", -1}}).empty());
  CHECK(reduce_word({{"a", 0}, {"b", 2}}) == Word{{"b", 2}});
  CHECK(format_word({{"a", 1}, {"b", -2}}) == "a b^-2");
}

TEST_CASE("D = t: two tails meeting along the diagonal torus") {
  for (std::uint32_t q : {3u, 4u, 5u}) {
    const Field f(field_spec_for_order(q));
    const QuotientGraph Q = certified(parse_level("t", f), 8);
    const GraphOfGroups g = build_graph_of_groups(Q);
    CHECK(g.tails.size() == 2);
    CHECK(g.finite_part.size() == 2);
    REQUIRE(g.edges.size() == 1);
    CHECK(g.edges[0].in_tree);
    CHECK(g.edges[0].group.order() == static_cast<std::uint64_t>((q - 1) * (q - 1)));
    const Presentation p = emit_presentation(g);
    check_relations(p, f);
    const AbelianGroup ab = abelianization_of_line_amalgam(g);
    CHECK(ab.order == static_cast<std::uint64_t>((q - 1) * (q - 1)));
    CHECK(ab.invariants == std::vector<std::int64_t>{q - 1, q - 1});
  }
}

TEST_CASE("abelianization needs q > 2") {
  const Field f({2, 1, {}});
  const QuotientGraph Q = certified(parse_level("t", f), 8);
  CHECK_THROWS_AS(abelianization_of_line_amalgam(build_graph_of_groups(Q)), PreconditionError);
}

TEST_CASE("D = 0 is a ray of groups") {
  const Field f({2, 1, {}});
  const QuotientGraph Q = certified(Level(f), 8);
  const GraphOfGroups g = build_graph_of_groups(Q);
  CHECK(g.tails.size() == 1);
  check_relations(emit_presentation(g), f);
}

TEST_CASE("non-tree edges contribute stable letters") {
  const Field f({3, 1, {}});
  const QuotientGraph Q = certified(parse_level("t^3", f), 10);
  const GraphOfGroups g = build_graph_of_groups(Q);
  int non_tree = 0;
  for (const auto& e : g.edges) non_tree += e.in_tree ? 0 : 1;
  CHECK(non_tree > 0);
  const Presentation p = emit_presentation(g);
  check_relations(p, f);
  int stable = 0;
  for (const auto& gen : p.generators) stable += gen.name.rfind('h', 0) == 0 ? 1 : 0;
  CHECK(stable == non_tree);
  CHECK(nlohmann::json::parse(presentation_json(p))["relations"].size() == p.relations.size());
}

TEST_CASE("presentations verify across small levels") {
  const Field f2({2, 1, {}});
  const Field f3({3, 1, {}});
  for (auto [field, text] : std::vector<std::pair<const Field*, const char*>>{
           {&f2, "t^2"}, {&f2, "t;t+1"}, {&f2, "t^3"}, {&f3, "t^2"}}) {
    const QuotientGraph Q = certified(parse_level(text, *field), 10);
    check_relations(emit_presentation(build_graph_of_groups(Q)), *field);
  }
}

TEST_CASE("end-to-end amalgam check") {
  for (std::uint32_t q : {2u, 3u, 4u}) {
    const AmalgamReport r = amalgam_example_check(q);
    CHECK(r.pass);
  }
}
