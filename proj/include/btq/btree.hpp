#pragma once

// The Bruhat-Tits tree of SL2(K), K = F_q((1/t)). Vertices are closed balls
// B_a^{|r|} = {x : nu(x - a) >= r}; larger r is a smaller ball (a child).

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "btq/algebra.hpp"

namespace btq {

struct BallVertex {
  int r = 0;
  // Exponents all below r; center.cutoff == r.
  LaurentFragment center;

  bool operator==(const BallVertex&) const = default;
};

// Truncates the center below r.
BallVertex make_vertex(int r, const LaurentFragment& center);
// v_n = B_0^{|-n|}.
BallVertex nagao_vertex(int n);

struct VertexHash {
  std::size_t operator()(const BallVertex& v) const noexcept {
    return hash_value(v.center) * 31 + static_cast<std::size_t>(v.r);
  }
};

// Total order on vertices used for deterministic output.
bool vertex_less(const BallVertex& a, const BallVertex& b);

struct Matrix2 {
  RationalFunction a, b, c, d;

  static Matrix2 identity(const Field& field);
  static Matrix2 from_polynomials(const Polynomial& a, const Polynomial& b, const Polynomial& c,
                                  const Polynomial& d);

  const Field& field() const { return d.field(); }
  RationalFunction det() const { return a * d - b * c; }
  Matrix2 inverse() const;
  bool is_polynomial() const;

  bool operator==(const Matrix2&) const = default;
};

Matrix2 operator*(const Matrix2& x, const Matrix2& y);

// Columns (m.a, m.c) and (m.b, m.d) span the lattice over O.
using LatticeBasis = Matrix2;

BallVertex canonicalize(const LatticeBasis& m);
// <(a, 1), (pi^r, 0)>.
LatticeBasis lattice_basis(const BallVertex& v, const Field& field);
BallVertex act(const Matrix2& g, const BallVertex& v);

// Parent first, then the q children in element-code order.
std::vector<BallVertex> neighbors(const BallVertex& v, const Field& field);
BallVertex parent(const BallVertex& v);

// Ball formula (r - m) + (r' - m), m = min(r, r', nu(a - a')).
int distance(const BallVertex& v, const BallVertex& w, const Field& field);
// Invariant factors of M^{-1} M'.
int lattice_distance(const BallVertex& v, const BallVertex& w, const Field& field);

// A point of P^1(k); nullopt is infinity.
struct RationalEnd {
  std::optional<RationalFunction> value;

  bool is_infinity() const noexcept { return !value.has_value(); }
  bool operator==(const RationalEnd&) const = default;
};

RationalEnd moebius(const Matrix2& g, const RationalEnd& xi);

// "r=<int>;a=<terms>", terms "c*s^e" joined by '+', ascending exponent; a zero
// center is "0".
std::string format_vertex(const BallVertex& v);
BallVertex parse_vertex(std::string_view text, const Field& field);

std::string format_matrix(const Matrix2& g);

}  // namespace btq
