#pragma once

// The congruence group H_D = {g in GL2(F_q[t]) : det g in F*, N_D | g21}.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "btq/algebra.hpp"
#include "btq/btree.hpp"
#include "btq/linear.hpp"

namespace btq {

struct LevelFactor {
  Polynomial prime;  // monic irreducible
  int multiplicity = 1;
};

class Level {
 public:
  // D = 0.
  explicit Level(const Field& field);
  Level(const Field& field, std::vector<LevelFactor> factors);

  const Field& field() const { return *field_; }
  const std::vector<LevelFactor>& factors() const noexcept { return factors_; }
  bool is_zero() const noexcept { return factors_.empty(); }
  int prime_count() const noexcept { return static_cast<int>(factors_.size()); }
  int degree() const;
  const Polynomial& modulus() const noexcept { return modulus_; }
  std::string to_string() const;

 private:
  const Field* field_;
  std::vector<LevelFactor> factors_;
  Polynomial modulus_;
};

// "t;t+1", "t^3", "(t+1)^2;t". A factor without parentheses must be a monic
// power of one irreducible; empty text or "0" is D = 0.
Level parse_level(std::string_view text, const Field& field);

bool is_member(const Matrix2& g, const Level& level);

struct Move {
  enum class Kind { translate, invert };
  Kind kind = Kind::invert;
  Polynomial f;  // translate only: tau_f = [[1, -f], [0, 1]]

  Matrix2 matrix(const Field& field) const;
  std::string to_string() const;
};

struct ReductionResult {
  int level_n = 0;
  std::vector<Move> word;  // in application order
  Matrix2 g;               // product, last move leftmost
};

ReductionResult reduce(const BallVertex& v, const Field& field);

// Stab_{H_D}(v) written in the frame where v becomes v_n: every element is
// conjugator^{-1} * s * conjugator with s in Stab_{GL2(R)}(v_n).
//
// For n >= 1, s = [[alpha, b], [0, beta]] with deg b <= n. Each block fixes a
// torus pair and a particular b; the b's of a block form the coset
// particular + span(unipotent_basis). For n = 0, s ranges over GL2(F_q) and
// each block is one explicit element.
struct StabBlock {
  FieldElement alpha;
  FieldElement beta;
  FqVector particular;
  Matrix2 element;  // level 0 only
};

struct StabDescriptor {
  const Field* field = nullptr;
  BallVertex base_vertex;
  Matrix2 conjugator;
  Matrix2 conjugator_inverse;
  int level_n = 0;
  std::vector<StabBlock> blocks;
  std::vector<FqVector> unipotent_basis;

  std::uint64_t order() const;
  int unipotent_dimension() const { return static_cast<int>(unipotent_basis.size()); }
  Matrix2 frame_matrix(const StabBlock& block, const FqVector& b) const;
  Matrix2 to_group(const Matrix2& s) const { return conjugator_inverse * s * conjugator; }
  Matrix2 to_frame(const Matrix2& h) const { return conjugator * h * conjugator_inverse; }
  bool contains_frame(const Matrix2& s) const;
  bool contains(const Matrix2& h) const { return contains_frame(to_frame(h)); }
  // Some element has two distinct eigenvalues in F*.
  bool has_split_torus() const;
};

// Pointwise stabilizer of v and every vertex of also_fixed.
StabDescriptor stabilizer(const BallVertex& v, const Level& level,
                          const std::vector<BallVertex>& also_fixed = {});
std::optional<Matrix2> orbit_equivalent(const BallVertex& v, const BallVertex& w, const Level& level);
// Same test from precomputed reductions of v and w.
std::optional<Matrix2> orbit_equivalent(const ReductionResult& v, const ReductionResult& w,
                                        const Level& level);

std::vector<Matrix2> materialize(const StabDescriptor& sd, std::uint64_t cap);

// Frame forms; use sd.to_group for the matrices in H_D. Torus generators
// come first, then the unipotent ones.
std::vector<Matrix2> generator_frames(const StabDescriptor& sd);
std::vector<Matrix2> generators(const StabDescriptor& sd);

// A word (generator index, positive exponent) evaluating to the frame element s.
using GeneratorWord = std::vector<std::pair<int, int>>;
GeneratorWord express(const StabDescriptor& sd, const Matrix2& s);
Matrix2 evaluate(const GeneratorWord& word, const std::vector<Matrix2>& gens, const Field& field);

// Oracle: every element of Stab_{GL2(R)}(v_n) tried one by one.
std::vector<Matrix2> full_stabilizer_frames(int n, const Field& field);
std::vector<Matrix2> stabilizer_brute(const BallVertex& v, const Level& level);
std::optional<Matrix2> orbit_equivalent_brute(const BallVertex& v, const BallVertex& w,
                                              const Level& level);

// (q-1)^2 q^{n+1} for n >= 1 and |GL2(F_q)| for n = 0.
std::uint64_t full_stabilizer_order(int n, std::uint32_t q);

}  // namespace btq
