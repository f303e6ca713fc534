#include "btq/hecke.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <unordered_map>

#include "btq/errors.hpp"

namespace btq {

// --------------------------------------------------------------------- Level

Level::Level(const Field& field) : field_(&field), modulus_(Polynomial::constant(field, field.one())) {}

Level::Level(const Field& field, std::vector<LevelFactor> factors)
    : field_(&field), factors_(std::move(factors)), modulus_(Polynomial::constant(field, field.one())) {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto& f = factors_[i];
    if (f.multiplicity < 1) throw DomainError("level multiplicities must be positive");
    if (!f.prime.is_monic() || !is_irreducible(f.prime)) {
      throw DomainError("level factor " + btq::to_string(f.prime) + " is not monic irreducible");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (factors_[j].prime == f.prime) {
        throw DomainError("level factor " + btq::to_string(f.prime) + " is repeated");
      }
    }
    modulus_ *= f.prime.pow(static_cast<unsigned>(f.multiplicity));
  }
}

int Level::degree() const {
  int d = 0;
  for (const auto& f : factors_) d += f.multiplicity * f.prime.degree();
  return d;
}

std::string Level::to_string() const {
  if (factors_.empty()) return "0";
  std::string out;
  for (const auto& f : factors_) {
    if (!out.empty()) out += ';';
    const std::string p = btq::to_string(f.prime);
    if (f.multiplicity == 1) {
      out += p;
    } else if (f.prime.degree() == 1 && f.prime.coeff(0).is_zero()) {
      out += "t^" + std::to_string(f.multiplicity);
    } else {
      out += "(" + p + ")^" + std::to_string(f.multiplicity);
    }
  }
  return out;
}

namespace {

// Smallest-degree monic divisor of f, which is irreducible.
Polynomial smallest_monic_divisor(const Polynomial& f) {
  const Field& field = f.field();
  const std::uint32_t q = field.order();
  for (int d = 1; d < f.degree(); ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= q;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::vector<FieldElement> coeffs(static_cast<std::size_t>(d) + 1);
      std::uint64_t x = idx;
      for (int i = 0; i < d; ++i) {
        coeffs[static_cast<std::size_t>(i)] = {static_cast<std::uint32_t>(x % q)};
        x /= q;
      }
      coeffs.back() = field.one();
      Polynomial g(field, std::move(coeffs));
      if (divides(g, f)) return g;
    }
  }
  return f;
}

}  // namespace

Level parse_level(std::string_view text, const Field& field) {
  auto blank = [](std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
  };
  if (blank(text)) return Level(field);
  {
    std::string compact;
    for (char c : text) {
      if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
    }
    if (compact == "0") return Level(field);
  }

  std::vector<LevelFactor> factors;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view piece = text.substr(start, end - start);
    std::size_t b = 0;
    while (b < piece.size() && std::isspace(static_cast<unsigned char>(piece[b]))) ++b;
    std::size_t e = piece.size();
    while (e > b && std::isspace(static_cast<unsigned char>(piece[e - 1]))) --e;
    piece = piece.substr(b, e - b);
    const std::size_t offset = start + b;
    if (piece.empty()) throw ParseError("empty level factor", offset);

    LevelFactor factor;
    const std::size_t close = piece.rfind(')');
    if (piece.front() == '(' && close != std::string_view::npos && close + 1 < piece.size() &&
        piece[close + 1] == '^') {
      std::string_view exp = piece.substr(close + 2);
      int k = 0;
      auto [ptr, ec] = std::from_chars(exp.data(), exp.data() + exp.size(), k);
      if (ec != std::errc() || ptr != exp.data() + exp.size() || k < 1) {
        throw ParseError("bad multiplicity", offset + close + 2);
      }
      Polynomial p = parse_polynomial(piece.substr(1, close - 1), field);
      if (!p.is_monic() || p.degree() < 1) throw ParseError("level factor must be monic", offset);
      if (!is_irreducible(p)) throw ParseError("level factor is reducible", offset);
      factor = {std::move(p), k};
    } else {
      Polynomial f = parse_polynomial(piece, field);
      if (!f.is_monic() || f.degree() < 1) throw ParseError("level factor must be monic", offset);
      Polynomial p = smallest_monic_divisor(f);
      const int k = f.degree() / p.degree();
      if (!(p.pow(static_cast<unsigned>(k)) == f)) {
        throw ParseError("level factor " + to_string(f) + " is not a power of an irreducible", offset);
      }
      factor = {std::move(p), k};
    }
    for (const auto& other : factors) {
      if (other.prime == factor.prime) throw ParseError("repeated level factor", offset);
    }
    factors.push_back(std::move(factor));
    start = end + 1;
  }
  return Level(field, std::move(factors));
}

bool is_member(const Matrix2& g, const Level& level) {
  if (!g.is_polynomial()) return false;
  const RationalFunction d = g.det();
  if (d.is_zero() || !d.is_constant()) return false;
  return divides(level.modulus(), g.c.num());
}

// ----------------------------------------------------------------- reduction

Matrix2 Move::matrix(const Field& field) const {
  const Polynomial one = Polynomial::constant(field, field.one());
  const Polynomial zero(field);
  if (kind == Kind::translate) return Matrix2::from_polynomials(one, -f, zero, one);
  return Matrix2::from_polynomials(zero, one, one, zero);
}

std::string Move::to_string() const {
  if (kind == Kind::translate) return "tau[" + btq::to_string(f) + "]";
  return "I";
}

ReductionResult reduce(const BallVertex& v, const Field& field) {
  ReductionResult out;
  out.g = Matrix2::identity(field);
  BallVertex cur = v;
  auto apply_move = [&](Move move) {
    const Matrix2 m = move.matrix(field);
    cur = act(m, cur);
    out.g = m * out.g;
    out.word.push_back(std::move(move));
  };
  while (true) {
    if (cur.center.empty()) {
      if (cur.r > 0) apply_move({Move::Kind::invert, Polynomial(field)});
      out.level_n = -cur.r;
      return out;
    }
    Polynomial f = polynomial_part(cur.center, field);
    if (!f.is_zero()) {
      apply_move({Move::Kind::translate, std::move(f)});
    } else {
      apply_move({Move::Kind::invert, Polynomial(field)});
    }
  }
}

// ------------------------------------------------------------- stabilizers

namespace {

Polynomial entry(const RationalFunction& x) {
  if (!x.is_polynomial()) throw ConsistencyError("expected a polynomial matrix entry");
  return x.num();
}

Polynomial poly_from_vector(const Field& field, const FqVector& b) { return Polynomial(field, b); }

FqVector vector_from_poly(const Polynomial& f, int n) {
  FqVector out(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) out[static_cast<std::size_t>(i)] = f.coeff(i);
  return out;
}

std::uint64_t saturating_pow(std::uint64_t base, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > UINT64_MAX / base) return UINT64_MAX;
    r *= base;
  }
  return r;
}

// Every combination of the basis vectors, in lexicographic coefficient order.
template <typename Fn>
void for_each_in_span(const Field& field, const std::vector<FqVector>& basis, std::size_t len, Fn&& fn) {
  const std::uint32_t q = field.order();
  std::vector<std::uint32_t> coeff(basis.size(), 0);
  while (true) {
    FqVector v(len, field.zero());
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (coeff[j] == 0) continue;
      for (std::size_t i = 0; i < len; ++i) {
        v[i] = field.add(v[i], field.mul({coeff[j]}, basis[j][i]));
      }
    }
    if (!fn(v)) return;
    std::size_t k = 0;
    while (k < coeff.size() && ++coeff[k] == q) coeff[k++] = 0;
    if (k == coeff.size()) return;
  }
}

Matrix2 constant_matrix(const Field& field, FieldElement a, FieldElement b, FieldElement c,
                        FieldElement d) {
  return {RationalFunction::constant(field, a), RationalFunction::constant(field, b),
          RationalFunction::constant(field, c), RationalFunction::constant(field, d)};
}

FieldElement constant_of(const RationalFunction& x) { return x.is_zero() ? FieldElement{0} : x.num().coeff(0); }

// The divisibility N | h21 for h = left * s * right, as linear equations.
// Level >= 1: unknowns are the coefficients of b, parameters (alpha, beta).
// Level 0: unknowns (a, b, c, d) of s, homogeneous.
struct FrameSystem {
  FqMatrix w;
  FqMatrix r;
};

void add_modulus_rows(FrameSystem& sys, const Matrix2& left, const Matrix2& right, const Level& level,
                      int n) {
  const Polynomial& modulus = level.modulus();
  if (modulus.degree() < 1) return;
  const Field& field = level.field();
  const Polynomial rp = entry(left.c);
  const Polynomial u = entry(left.d);
  const Polynomial a = entry(right.a);
  const Polynomial c = entry(right.c);
  const auto rows = static_cast<std::size_t>(modulus.degree());
  if (n >= 1) {
    const FqVector ra = residue_coordinates(rp * a, modulus);
    const FqVector uc = residue_coordinates(u * c, modulus);
    std::vector<FqVector> cols;
    Polynomial shifted = rp * c;
    for (int i = 0; i <= n; ++i) {
      cols.push_back(residue_coordinates(shifted, modulus));
      shifted = shifted.shifted(1);
    }
    for (std::size_t row = 0; row < rows; ++row) {
      FqVector wr;
      for (const auto& col : cols) wr.push_back(col[row]);
      sys.w.push_back(std::move(wr));
      sys.r.push_back({field.neg(ra[row]), field.neg(uc[row])});
    }
  } else {
    const FqVector c1 = residue_coordinates(rp * a, modulus);
    const FqVector c2 = residue_coordinates(rp * c, modulus);
    const FqVector c3 = residue_coordinates(u * a, modulus);
    const FqVector c4 = residue_coordinates(u * c, modulus);
    for (std::size_t row = 0; row < rows; ++row) {
      sys.w.push_back({c1[row], c2[row], c3[row], c4[row]});
      sys.r.push_back({});
    }
  }
}

// s fixes B_c^{|r|} iff nu((alpha - beta) c + b) >= r.
void add_fix_rows(FrameSystem& sys, const BallVertex& x, int n, const Field& field) {
  std::set<int> exponents;
  for (const auto& term : x.center.terms) exponents.insert(term.first);
  for (int i = 0; i <= n; ++i) {
    if (-i < x.r) exponents.insert(-i);
  }
  for (int e : exponents) {
    FqVector wr(static_cast<std::size_t>(n) + 1, field.zero());
    if (e <= 0 && -e <= n) wr[static_cast<std::size_t>(-e)] = field.one();
    const FieldElement ce = x.center.coeff(e);
    sys.w.push_back(std::move(wr));
    sys.r.push_back({field.neg(ce), ce});
  }
}

Matrix2 upper(const Field& field, FieldElement alpha, const Polynomial& b, FieldElement beta) {
  return {RationalFunction::constant(field, alpha), RationalFunction(b), RationalFunction(field),
          RationalFunction::constant(field, beta)};
}

bool det_nonzero(const Field& field, const FqVector& s) {
  return !field.sub(field.mul(s[0], s[3]), field.mul(s[1], s[2])).is_zero();
}

struct Frame {
  ReductionResult reduction;
  Matrix2 inverse;
};

Frame frame_of(const BallVertex& v, const Field& field) {
  Frame f{reduce(v, field), {}};
  f.inverse = f.reduction.g.inverse();
  return f;
}

// Blocks of {s : N | (left s right)_21, s fixes every frame vertex in fixed}.
StabDescriptor solve_blocks(const Level& level, int n, const Matrix2& left, const Matrix2& right,
                            const std::vector<BallVertex>& fixed, bool first_only) {
  const Field& field = level.field();
  StabDescriptor sd;
  sd.field = &field;
  sd.level_n = n;
  FrameSystem sys;
  add_modulus_rows(sys, left, right, level, n);
  if (n >= 1) {
    for (const auto& x : fixed) add_fix_rows(sys, x, n, field);
    const auto unknowns = static_cast<std::size_t>(n) + 1;
    const ParametricSolution sol = solve_parametric(field, sys.w, sys.r, unknowns, 2);
    sd.unipotent_basis = sol.kernel;
    for (const FieldElement alpha : field.units()) {
      for (const FieldElement beta : field.units()) {
        const FqVector lam{alpha, beta};
        bool ok = true;
        for (const auto& cond : sol.conditions) {
          if (!apply(field, {cond}, lam)[0].is_zero()) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        sd.blocks.push_back({alpha, beta, apply(field, sol.particular, lam), {}});
        if (first_only) return sd;
      }
    }
    return sd;
  }
  const ParametricSolution sol = solve_parametric(field, sys.w, sys.r, 4, 0);
  for_each_in_span(field, sol.kernel, 4, [&](const FqVector& s) {
    if (!det_nonzero(field, s)) return true;
    const Matrix2 m = constant_matrix(field, s[0], s[1], s[2], s[3]);
    for (const auto& x : fixed) {
      if (!(act(m, x) == x)) return true;
    }
    sd.blocks.push_back({field.zero(), field.zero(), {}, m});
    return !first_only;
  });
  return sd;
}

}  // namespace

std::uint64_t StabDescriptor::order() const {
  const std::uint64_t unip = saturating_pow(field->order(), unipotent_dimension());
  if (unip == UINT64_MAX || (unip != 0 && blocks.size() > UINT64_MAX / unip)) return UINT64_MAX;
  return blocks.size() * unip;
}

Matrix2 StabDescriptor::frame_matrix(const StabBlock& block, const FqVector& b) const {
  if (level_n == 0) return block.element;
  return upper(*field, block.alpha, poly_from_vector(*field, b), block.beta);
}

bool StabDescriptor::contains_frame(const Matrix2& s) const {
  if (!s.is_polynomial()) return false;
  if (level_n == 0) {
    return std::any_of(blocks.begin(), blocks.end(), [&](const StabBlock& b) { return b.element == s; });
  }
  if (!s.c.is_zero() || !s.a.is_constant() || !s.d.is_constant()) return false;
  if (s.b.num().degree() > level_n) return false;
  const FieldElement alpha = constant_of(s.a);
  const FieldElement beta = constant_of(s.d);
  for (const auto& block : blocks) {
    if (block.alpha != alpha || block.beta != beta) continue;
    FqVector diff = vector_from_poly(s.b.num(), level_n);
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = field->sub(diff[i], block.particular[i]);
    return coordinates(*field, unipotent_basis, diff).has_value();
  }
  return false;
}

bool StabDescriptor::has_split_torus() const {
  if (level_n >= 1) {
    return std::any_of(blocks.begin(), blocks.end(), [](const StabBlock& b) { return b.alpha != b.beta; });
  }
  for (const auto& block : blocks) {
    const Matrix2& m = block.element;
    const FieldElement tr = field->add(constant_of(m.a), constant_of(m.d));
    const FieldElement det = constant_of(m.det());
    int roots = 0;
    for (const FieldElement x : field->elements()) {
      if (field->add(field->sub(field->mul(x, x), field->mul(tr, x)), det).is_zero()) ++roots;
    }
    if (roots == 2) return true;
  }
  return false;
}

StabDescriptor stabilizer(const BallVertex& v, const Level& level, const std::vector<BallVertex>& also_fixed) {
  const Field& field = level.field();
  const Frame frame = frame_of(v, field);
  std::vector<BallVertex> fixed;
  fixed.reserve(also_fixed.size());
  for (const auto& x : also_fixed) fixed.push_back(act(frame.reduction.g, x));
  StabDescriptor sd =
      solve_blocks(level, frame.reduction.level_n, frame.inverse, frame.reduction.g, fixed, false);
  sd.base_vertex = v;
  sd.conjugator = frame.reduction.g;
  sd.conjugator_inverse = frame.inverse;
  return sd;
}

std::optional<Matrix2> orbit_equivalent(const ReductionResult& v, const ReductionResult& w,
                                        const Level& level) {
  if (v.level_n != w.level_n) return std::nullopt;
  const Matrix2 w_inverse = w.g.inverse();
  const StabDescriptor sd = solve_blocks(level, v.level_n, w_inverse, v.g, {}, true);
  if (sd.blocks.empty()) return std::nullopt;
  return w_inverse * sd.frame_matrix(sd.blocks.front(), sd.blocks.front().particular) * v.g;
}

std::optional<Matrix2> orbit_equivalent(const BallVertex& v, const BallVertex& w, const Level& level) {
  const Field& field = level.field();
  return orbit_equivalent(reduce(v, field), reduce(w, field), level);
}

std::vector<Matrix2> materialize(const StabDescriptor& sd, std::uint64_t cap) {
  const std::uint64_t order = sd.order();
  if (order > cap) {
    throw SizeError("stabilizer of order " + std::to_string(order) + " exceeds cap " + std::to_string(cap));
  }
  std::vector<Matrix2> out;
  out.reserve(order);
  const std::size_t len = static_cast<std::size_t>(sd.level_n) + 1;
  for (const auto& block : sd.blocks) {
    if (sd.level_n == 0) {
      out.push_back(sd.to_group(block.element));
      continue;
    }
    for_each_in_span(*sd.field, sd.unipotent_basis, len, [&](const FqVector& u) {
      FqVector b = block.particular;
      for (std::size_t i = 0; i < len; ++i) b[i] = sd.field->add(b[i], u[i]);
      out.push_back(sd.to_group(sd.frame_matrix(block, b)));
      return true;
    });
  }
  return out;
}

namespace {

using ConstKey = std::array<std::uint32_t, 4>;

ConstKey key_of(const Matrix2& m) {
  return {constant_of(m.a).code, constant_of(m.b).code, constant_of(m.c).code, constant_of(m.d).code};
}

// Breadth-first words for every element generated by constant matrices.
std::map<ConstKey, GeneratorWord> cayley_words(const std::vector<Matrix2>& gens, const Field& field) {
  std::map<ConstKey, GeneratorWord> words;
  std::vector<Matrix2> queue{Matrix2::identity(field)};
  words[key_of(queue.front())] = {};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Matrix2 x = queue[head];
    const GeneratorWord base = words[key_of(x)];
    for (std::size_t i = 0; i < gens.size(); ++i) {
      Matrix2 y = x * gens[i];
      const ConstKey k = key_of(y);
      if (words.count(k)) continue;
      GeneratorWord w = base;
      if (!w.empty() && w.back().first == static_cast<int>(i)) {
        ++w.back().second;
      } else {
        w.emplace_back(static_cast<int>(i), 1);
      }
      words[k] = std::move(w);
      queue.push_back(std::move(y));
    }
  }
  return words;
}

using Pair = std::pair<std::uint32_t, std::uint32_t>;

std::map<Pair, std::vector<int>> torus_words(const std::vector<Pair>& gens, const Field& field) {
  std::map<Pair, std::vector<int>> words;
  std::vector<Pair> queue{{1, 1}};
  words[{1, 1}] = {};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Pair x = queue[head];
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const Pair y{field.mul({x.first}, {gens[i].first}).code, field.mul({x.second}, {gens[i].second}).code};
      if (words.count(y)) continue;
      auto w = words[x];
      w.push_back(static_cast<int>(i));
      words[y] = std::move(w);
      queue.push_back(y);
    }
  }
  return words;
}

struct GeneratorData {
  std::vector<Matrix2> frames;
  std::vector<Pair> torus_pairs;  // level >= 1
};

GeneratorData generator_data(const StabDescriptor& sd) {
  const Field& field = *sd.field;
  GeneratorData out;
  if (sd.level_n == 0) {
    std::set<ConstKey> closure{key_of(Matrix2::identity(field))};
    for (const auto& block : sd.blocks) {
      if (closure.count(key_of(block.element))) continue;
      out.frames.push_back(block.element);
      const auto words = cayley_words(out.frames, field);
      closure.clear();
      for (const auto& kv : words) closure.insert(kv.first);
    }
    return out;
  }
  std::set<Pair> reached{{1, 1}};
  for (const auto& block : sd.blocks) {
    const Pair p{block.alpha.code, block.beta.code};
    if (reached.count(p)) continue;
    out.frames.push_back(sd.frame_matrix(block, block.particular));
    out.torus_pairs.push_back(p);
    reached.clear();
    for (const auto& kv : torus_words(out.torus_pairs, field)) reached.insert(kv.first);
  }
  const std::size_t len = static_cast<std::size_t>(sd.level_n) + 1;
  for (const auto& basis : sd.unipotent_basis) {
    for (std::uint32_t k = 0; k < field.degree(); ++k) {
      // g^k, g the class of x, has the single digit 1 in position k.
      std::vector<std::uint32_t> digits(field.degree(), 0);
      digits[k] = 1;
      const FieldElement gk = field.from_digits(digits);
      FqVector b(len);
      for (std::size_t i = 0; i < len; ++i) b[i] = field.mul(gk, basis[i]);
      out.frames.push_back(upper(field, field.one(), poly_from_vector(field, b), field.one()));
    }
  }
  return out;
}

}  // namespace

std::vector<Matrix2> generator_frames(const StabDescriptor& sd) { return generator_data(sd).frames; }

std::vector<Matrix2> generators(const StabDescriptor& sd) {
  std::vector<Matrix2> out;
  for (const auto& s : generator_frames(sd)) out.push_back(sd.to_group(s));
  return out;
}

GeneratorWord express(const StabDescriptor& sd, const Matrix2& s) {
  const Field& field = *sd.field;
  if (!sd.contains_frame(s)) throw DomainError("element is not in the stabilizer");
  const GeneratorData data = generator_data(sd);
  if (sd.level_n == 0) {
    return cayley_words(data.frames, field).at(key_of(s));
  }
  const Pair target{constant_of(s.a).code, constant_of(s.d).code};
  const auto tw = torus_words(data.torus_pairs, field);
  GeneratorWord word;
  Matrix2 t = Matrix2::identity(field);
  for (int i : tw.at(target)) {
    if (!word.empty() && word.back().first == i) {
      ++word.back().second;
    } else {
      word.emplace_back(i, 1);
    }
    t = t * data.frames[static_cast<std::size_t>(i)];
  }
  const Matrix2 u = t.inverse() * s;
  const auto coords = coordinates(field, sd.unipotent_basis, vector_from_poly(entry(u.b), sd.level_n));
  if (!coords) throw ConsistencyError("unipotent part outside the stabilizer");
  const int torus_count = static_cast<int>(data.torus_pairs.size());
  for (std::size_t j = 0; j < coords->size(); ++j) {
    const auto digits = field.digits((*coords)[j]);
    for (std::uint32_t k = 0; k < field.degree(); ++k) {
      if (digits[k] == 0) continue;
      word.emplace_back(torus_count + static_cast<int>(j * field.degree() + k), static_cast<int>(digits[k]));
    }
  }
  return word;
}

Matrix2 evaluate(const GeneratorWord& word, const std::vector<Matrix2>& gens, const Field& field) {
  Matrix2 out = Matrix2::identity(field);
  for (const auto& [i, e] : word) {
    for (int k = 0; k < e; ++k) out = out * gens.at(static_cast<std::size_t>(i));
  }
  return out;
}

std::vector<Matrix2> full_stabilizer_frames(int n, const Field& field) {
  std::vector<Matrix2> out;
  if (n == 0) {
    for (auto a : field.elements()) {
      for (auto b : field.elements()) {
        for (auto c : field.elements()) {
          for (auto d : field.elements()) {
            if (det_nonzero(field, {a, b, c, d})) out.push_back(constant_matrix(field, a, b, c, d));
          }
        }
      }
    }
    return out;
  }
  std::vector<FqVector> basis;
  const std::size_t len = static_cast<std::size_t>(n) + 1;
  for (std::size_t i = 0; i < len; ++i) {
    FqVector e(len, field.zero());
    e[i] = field.one();
    basis.push_back(std::move(e));
  }
  for (auto alpha : field.units()) {
    for (auto beta : field.units()) {
      for_each_in_span(field, basis, len, [&](const FqVector& b) {
        out.push_back(upper(field, alpha, poly_from_vector(field, b), beta));
        return true;
      });
    }
  }
  return out;
}

std::vector<Matrix2> stabilizer_brute(const BallVertex& v, const Level& level) {
  const Field& field = level.field();
  const Frame frame = frame_of(v, field);
  std::vector<Matrix2> out;
  for (const auto& s : full_stabilizer_frames(frame.reduction.level_n, field)) {
    Matrix2 h = frame.inverse * s * frame.reduction.g;
    if (is_member(h, level)) out.push_back(std::move(h));
  }
  return out;
}

std::optional<Matrix2> orbit_equivalent_brute(const BallVertex& v, const BallVertex& w, const Level& level) {
  const Field& field = level.field();
  const Frame fv = frame_of(v, field);
  const Frame fw = frame_of(w, field);
  if (fv.reduction.level_n != fw.reduction.level_n) return std::nullopt;
  for (const auto& s : full_stabilizer_frames(fv.reduction.level_n, field)) {
    Matrix2 h = fw.inverse * s * fv.reduction.g;
    if (is_member(h, level)) return h;
  }
  return std::nullopt;
}

std::uint64_t full_stabilizer_order(int n, std::uint32_t q) {
  const std::uint64_t qq = q;
  if (n == 0) return (qq * qq - 1) * (qq * qq - qq);
  return (qq - 1) * (qq - 1) * saturating_pow(qq, n + 1);
}

}  // namespace btq
