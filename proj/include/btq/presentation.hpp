#pragma once

// The graph of groups carried by a quotient graph and the presentation of
// its fundamental group.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "btq/quotient.hpp"

namespace btq {

struct CuspGroupDescriptor {
  int cusp = 0;            // index into base.cusps
  std::vector<int> chain;  // junction first, then toward the boundary
  Splitness splitness = Splitness::indeterminate;
  std::string torus_description;  // "F*xF*", "F*" or "trivial"
  std::vector<int> unipotent_tower;  // F_q-dimensions along chain
  std::vector<std::uint64_t> stab_tower;
  std::uint64_t germ_edge_group_order = 0;
};

// One geometric edge of the quotient: the Stab(src)-orbit orbit_index of
// neighbors of src's representative, landing in class dst.
struct GroupEdge {
  int id = 0;
  int src = 0;
  int dst = 0;
  int orbit_index = 0;
  bool in_tree = false;
  Matrix2 g;  // g_y: sends dst's representative to the lifted endpoint
  StabDescriptor group;
  std::vector<Matrix2> group_generators;

  // f_y: edge group -> Stab(dst representative).
  Matrix2 to_dst(const Matrix2& b) const { return g.inverse() * b * g; }
};

struct GraphOfGroups {
  const QuotientGraph* base = nullptr;
  std::vector<int> finite_part;                  // class ids, ascending
  std::vector<std::vector<Matrix2>> vertex_elements;  // per finite class; empty when too large
  std::vector<GroupEdge> edges;                   // every geometric edge inside the finite part
  std::vector<CuspGroupDescriptor> tails;
  std::vector<int> tail_of;  // per class: tail index, or -1; junctions count as finite

  bool in_finite_part(int id) const;
};

GraphOfGroups build_graph_of_groups(const QuotientGraph& q, std::uint64_t element_cap = 4096);

struct Letter {
  std::string generator;
  int exponent = 1;

  bool operator==(const Letter&) const = default;
};

using Word = std::vector<Letter>;

struct NamedGenerator {
  std::string name;
  Matrix2 matrix;
  std::string owner;  // "v<id>" or "e<id>"
};

struct Relation {
  std::string label;
  Word word;
};

struct Presentation {
  std::vector<NamedGenerator> generators;
  std::vector<Relation> relations;
  std::vector<std::string> tail_summaries;
};

Word reduce_word(Word w);
std::string format_word(const Word& w);
Matrix2 evaluate_word(const Word& w, const std::vector<NamedGenerator>& gens, const Field& field);

// Every relation is checked by matrix arithmetic first; a failure throws
// ConsistencyError and nothing is returned.
Presentation emit_presentation(const GraphOfGroups& g);

std::string presentation_text(const Presentation& p);
std::string presentation_json(const Presentation& p);

struct AmalgamReport {
  bool pass = false;
  std::vector<std::string> diagnostics;
};

// D = (t) over F_q, end to end.
AmalgamReport amalgam_example_check(std::uint32_t q, int depth = 8, int threads = 1);

struct AbelianGroup {
  std::vector<std::int64_t> invariants;  // nontrivial invariant factors, each dividing the next
  std::uint64_t order = 1;

  std::string to_string() const;
};

// Cokernel of the edge group into the abelianized tails of a line amalgam
// P1 *_B P2.
AbelianGroup abelianization_of_line_amalgam(const GraphOfGroups& g);

// Field F_q with q = p^s and the default modulus.
FieldSpec field_spec_for_order(std::uint32_t q);

}  // namespace btq
