#pragma once

// Bounded breadth-first construction of the quotient graph H_D \ tree, with
// cusp certification along boundary-directed chains.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "btq/hecke.hpp"

namespace btq {

enum class Splitness { split, nonsplit, indeterminate };

std::string to_string(Splitness s);

// One Stab(src)-orbit on the tree neighbors of a class representative.
struct NeighborOrbit {
  int neighbor_index = 0;  // index into neighbors(rep), the first member
  BallVertex vertex;
  int size = 0;
  int target = -1;  // class id
  // An element of H_D sending the target representative to vertex.
  Matrix2 witness;
};

struct OrbitClass {
  int id = 0;
  BallVertex representative;
  int level_n = 0;
  ReductionResult reduction;
  StabDescriptor stab;
  int depth = 0;
  int parent = -1;
  bool expanded = false;
  std::vector<NeighborOrbit> orbits;

  // Number of neighbor orbits; absent for boundary classes.
  std::optional<int> valency() const;
};

struct QuotientEdge {
  int src = 0;
  int dst = 0;
  int multiplicity = 0;          // counted from src
  std::optional<int> reverse;    // counted from dst when dst was expanded
};

struct CuspDescriptor {
  std::pair<int, int> germ;
  int certified_depth = 0;
  Splitness splitness = Splitness::indeterminate;
  std::vector<std::uint64_t> stab_tower;
  std::vector<int> chain;  // class ids from the germ start to the boundary
};

struct QuotientGraph {
  const Field* field = nullptr;
  Level level;
  int depth = 0;
  std::vector<OrbitClass> classes;
  std::vector<QuotientEdge> edges;
  std::vector<CuspDescriptor> cusps;

  explicit QuotientGraph(const Level& l) : field(&l.field()), level(l) {}
};

struct BuildOptions {
  int threads = 1;
};

QuotientGraph build_quotient(const Level& level, int depth, const BuildOptions& options = {});

// Conditions (d) and (e) on the step from -> to, plus |Stab(to)| = q |Stab(from)|.
bool closing_step(const QuotientGraph& q, int from, int to);
std::vector<CuspDescriptor> certify_cusps(const QuotientGraph& q, int window);
Splitness classify_splitness(const CuspDescriptor& c, const QuotientGraph& q);

// Checks that fail on a built graph, one message per violation.
std::vector<std::string> edge_consistency_violations(const QuotientGraph& q);
std::vector<std::string> neighbor_accounting_violations(const QuotientGraph& q);
std::vector<std::string> bipartite_violations(const QuotientGraph& q);

// Connected, acyclic, every vertex of degree at most two.
bool is_path(const QuotientGraph& q);
// A path in which v0 has degree one.
bool is_ray_from_base(const QuotientGraph& q);

std::string export_dot(const QuotientGraph& q);
std::string export_json(const QuotientGraph& q);
std::string export_text(const QuotientGraph& q);

}  // namespace btq
