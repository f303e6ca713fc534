#include "btq/btree.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "btq/errors.hpp"

namespace btq {

BallVertex make_vertex(int r, const LaurentFragment& center) { return {r, truncate(center, r)}; }

BallVertex nagao_vertex(int n) {
  LaurentFragment zero;
  zero.cutoff = -n;
  return {-n, zero};
}

bool vertex_less(const BallVertex& a, const BallVertex& b) {
  if (a.r != b.r) return a.r < b.r;
  return a.center.terms < b.center.terms;
}

Matrix2 Matrix2::identity(const Field& field) {
  const RationalFunction one = RationalFunction::constant(field, field.one());
  const RationalFunction zero(field);
  return {one, zero, zero, one};
}

Matrix2 Matrix2::from_polynomials(const Polynomial& a, const Polynomial& b, const Polynomial& c,
                                  const Polynomial& d) {
  return {RationalFunction(a), RationalFunction(b), RationalFunction(c), RationalFunction(d)};
}

Matrix2 Matrix2::inverse() const {
  const RationalFunction delta = det();
  if (delta.is_zero()) throw DomainError("singular matrix has no inverse");
  const RationalFunction inv = delta.inverse();
  return {d * inv, -b * inv, -c * inv, a * inv};
}

bool Matrix2::is_polynomial() const {
  return a.is_polynomial() && b.is_polynomial() && c.is_polynomial() && d.is_polynomial();
}

Matrix2 operator*(const Matrix2& x, const Matrix2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

BallVertex canonicalize(const LatticeBasis& m) {
  if (m.det().is_zero()) throw DomainError("singular lattice basis");
  RationalFunction top1 = m.a;
  RationalFunction top2 = m.b;
  RationalFunction bot1 = m.c;
  RationalFunction bot2 = m.d;
  if (bot1.is_zero() || (!bot2.is_zero() && bot2.valuation() < bot1.valuation())) {
    std::swap(top1, top2);
    std::swap(bot1, bot2);
  }
  if (!bot2.is_zero()) top2 = top2 - (bot2 / bot1) * top1;
  const RationalFunction radius = top2 / bot1;
  const int r = radius.valuation();
  return make_vertex(r, expand_at_infinity(top1 / bot1, r));
}

LatticeBasis lattice_basis(const BallVertex& v, const Field& field) {
  return {to_rational(v.center, field), RationalFunction::pi_power(field, v.r),
          RationalFunction::constant(field, field.one()), RationalFunction(field)};
}

BallVertex act(const Matrix2& g, const BallVertex& v) {
  const Field& field = g.field();
  if (g.det().is_zero()) throw DomainError("singular matrix cannot act");
  return canonicalize(g * lattice_basis(v, field));
}

BallVertex parent(const BallVertex& v) { return make_vertex(v.r - 1, v.center); }

std::vector<BallVertex> neighbors(const BallVertex& v, const Field& field) {
  std::vector<BallVertex> out;
  out.reserve(field.order() + 1);
  out.push_back(parent(v));
  for (const FieldElement c : field.elements()) {
    BallVertex child{v.r + 1, v.center};
    child.center.cutoff = v.r + 1;
    if (!c.is_zero()) child.center.terms.emplace_back(v.r, c);
    out.push_back(std::move(child));
  }
  return out;
}

int distance(const BallVertex& v, const BallVertex& w, const Field& field) {
  const LaurentFragment diff = add(v.center, negate(w.center, field), field);
  const int m = std::min({v.r, w.r, diff.valuation()});
  return (v.r - m) + (w.r - m);
}

int lattice_distance(const BallVertex& v, const BallVertex& w, const Field& field) {
  const Matrix2 x = lattice_basis(v, field).inverse() * lattice_basis(w, field);
  const int lowest = std::min({x.a.valuation(), x.b.valuation(), x.c.valuation(), x.d.valuation()});
  return x.det().valuation() - 2 * lowest;
}

RationalEnd moebius(const Matrix2& g, const RationalEnd& xi) {
  if (g.det().is_zero()) throw DomainError("singular matrix cannot act");
  if (xi.is_infinity()) {
    if (g.c.is_zero()) return {};
    return {g.a / g.c};
  }
  const RationalFunction num = g.a * *xi.value + g.b;
  const RationalFunction den = g.c * *xi.value + g.d;
  if (den.is_zero()) return {};
  return {num / den};
}

std::string format_vertex(const BallVertex& v) {
  std::ostringstream out;
  out << "r=" << v.r << ";a=";
  if (v.center.empty()) {
    out << '0';
  } else {
    bool first = true;
    for (const auto& [e, c] : v.center.terms) {
      if (!first) out << '+';
      first = false;
      out << c.code << "*s^" << e;
    }
  }
  return out.str();
}

namespace {

std::string_view trim(std::string_view s, std::size_t& offset) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
    ++offset;
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

long long parse_int(std::string_view s, std::size_t offset) {
  std::size_t off = offset;
  s = trim(s, off);
  long long value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError("expected integer", off);
  }
  return value;
}

}  // namespace

BallVertex parse_vertex(std::string_view text, const Field& field) {
  const std::size_t semi = text.find(';');
  if (semi == std::string_view::npos) throw ParseError("expected ';'", text.size());
  std::size_t off = 0;
  std::string_view head = trim(text.substr(0, semi), off);
  if (head.substr(0, 2) != "r=") throw ParseError("expected 'r='", off);
  const long long r = parse_int(head.substr(2), off + 2);
  if (r < -1000000 || r > 1000000) throw ParseError("radius out of range", off + 2);

  std::size_t body_off = semi + 1;
  std::string_view body = trim(text.substr(semi + 1), body_off);
  if (body.substr(0, 2) != "a=") throw ParseError("expected 'a='", body_off);
  body.remove_prefix(2);
  body_off += 2;

  LaurentFragment sum;
  sum.cutoff = static_cast<int>(r);
  std::size_t term_off = body_off;
  while (true) {
    const std::size_t plus = body.find('+');
    std::size_t off_here = term_off;
    std::string_view term = trim(body.substr(0, plus), off_here);
    if (term.empty()) throw ParseError("empty term", off_here);
    if (term != "0") {
      const std::size_t star = term.find('*');
      if (star == std::string_view::npos) throw ParseError("expected 'c*s^e'", off_here);
      const long long code = parse_int(term.substr(0, star), off_here);
      std::size_t rest_off = off_here + star + 1;
      std::string_view rest = trim(term.substr(star + 1), rest_off);
      if (rest.substr(0, 2) != "s^") throw ParseError("expected 's^'", rest_off);
      const long long e = parse_int(rest.substr(2), rest_off + 2);
      if (code < 0 || code >= static_cast<long long>(field.order())) {
        throw ParseError("coefficient out of range for F_" + std::to_string(field.order()), off_here);
      }
      if (e < -1000000 || e > 1000000) throw ParseError("exponent out of range", rest_off + 2);
      LaurentFragment one;
      one.cutoff = static_cast<int>(r);
      if (e < r && code != 0) {
        one.terms.emplace_back(static_cast<int>(e), FieldElement{static_cast<std::uint32_t>(code)});
      }
      sum = add(sum, one, field);
    }
    if (plus == std::string_view::npos) break;
    body.remove_prefix(plus + 1);
    term_off += plus + 1;
  }
  return make_vertex(static_cast<int>(r), sum);
}

std::string format_matrix(const Matrix2& g) {
  return "[[" + to_string(g.a) + "," + to_string(g.b) + "],[" + to_string(g.c) + "," +
         to_string(g.d) + "]]";
}

}  // namespace btq
