#pragma once

// Exact arithmetic over F_q, F_q[t], F_q(t) and finite Laurent expansions at
// the place at infinity (uniformizer pi = 1/t, valuation nu = -deg on
// polynomials).

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace btq {

inline constexpr int kInfiniteValuation = std::numeric_limits<int>::max();

struct FieldSpec {
  std::uint32_t p = 2;
  std::uint32_t s = 1;
  // Little-endian coefficients over F_p of a monic irreducible polynomial of
  // degree s. Empty selects the built-in table entry; ignored when s = 1.
  std::vector<std::uint32_t> modulus;
};

// An element of F_q stored as its base-p digit vector packed little-endian
// into one integer (digit i is the coordinate of g^i, g the class of x).
struct FieldElement {
  std::uint32_t code = 0;

  bool is_zero() const noexcept { return code == 0; }
  auto operator<=>(const FieldElement&) const = default;
};

class Field {
 public:
  explicit Field(FieldSpec spec);

  std::uint32_t characteristic() const noexcept { return p_; }
  std::uint32_t degree() const noexcept { return s_; }
  std::uint32_t order() const noexcept { return q_; }
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
  FieldSpec spec() const { return {p_, s_, modulus_}; }

  FieldElement zero() const noexcept { return {0}; }
  FieldElement one() const noexcept { return {1}; }
  // Validates 0 <= code < q.
  FieldElement element(std::uint32_t code) const;
  // Image of an integer in the prime subfield.
  FieldElement from_integer(std::int64_t n) const;

  FieldElement add(FieldElement a, FieldElement b) const;
  FieldElement sub(FieldElement a, FieldElement b) const;
  FieldElement neg(FieldElement a) const;
  FieldElement mul(FieldElement a, FieldElement b) const;
  FieldElement inv(FieldElement a) const;
  FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }
  FieldElement pow(FieldElement a, std::uint64_t e) const;

  std::vector<std::uint32_t> digits(FieldElement a) const;
  FieldElement from_digits(const std::vector<std::uint32_t>& digits) const;

  // All q elements in code order.
  std::vector<FieldElement> elements() const;
  std::vector<FieldElement> units() const;
  // Smallest code generating F_q^*.
  FieldElement primitive_element() const;
  // Exponent k with primitive_element()^k = a; requires a != 0.
  std::uint32_t discrete_log(FieldElement a) const;

 private:
  FieldElement mul_slow(FieldElement a, FieldElement b) const;

  std::uint32_t p_;
  std::uint32_t s_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> add_table_;
  std::vector<std::uint32_t> mul_table_;
  std::vector<std::uint32_t> inv_table_;
  std::vector<std::uint32_t> log_table_;
  FieldElement primitive_{1};
};

bool is_prime(std::uint64_t n);

// Monic irreducible modulus used for F_{p^s} when none is given.
std::vector<std::uint32_t> default_modulus(std::uint32_t p, std::uint32_t s);

// Irreducibility over F_p by trial division; coefficients little-endian.
bool is_irreducible_over_prime_field(const std::vector<std::uint32_t>& coeffs, std::uint32_t p);

// Element of R = F_q[t]. Canonical: no trailing zero coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(const Field& field) : field_(&field) {}
  Polynomial(const Field& field, std::vector<FieldElement> coeffs);

  static Polynomial constant(const Field& field, FieldElement c);
  static Polynomial monomial(const Field& field, FieldElement c, int degree);
  static Polynomial t(const Field& field) { return monomial(field, field.one(), 1); }

  const Field& field() const { return *field_; }
  bool has_field() const noexcept { return field_ != nullptr; }

  // -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_constant() const noexcept { return coeffs_.size() <= 1; }
  bool is_one() const noexcept { return coeffs_.size() == 1 && coeffs_[0].code == 1; }
  bool is_monic() const noexcept { return !coeffs_.empty() && coeffs_.back().code == 1; }
  FieldElement coeff(int i) const;
  FieldElement leading() const;
  const std::vector<FieldElement>& coeffs() const noexcept { return coeffs_; }
  // -deg; infinite for zero.
  int valuation() const noexcept { return is_zero() ? kInfiniteValuation : -degree(); }

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial scaled(FieldElement c) const;
  Polynomial shifted(int k) const;  // multiply by t^k, k >= 0
  Polynomial monic() const;
  Polynomial pow(unsigned e) const;

  bool operator==(const Polynomial& o) const { return coeffs_ == o.coeffs_; }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

 private:
  void normalize();

  const Field* field_ = nullptr;
  std::vector<FieldElement> coeffs_;
};

struct DivMod {
  Polynomial quotient;
  Polynomial remainder;
};

DivMod divmod(const Polynomial& a, const Polynomial& b);
Polynomial operator%(const Polynomial& a, const Polynomial& b);
// Monic gcd; gcd(0, 0) = 0.
Polynomial gcd(Polynomial a, Polynomial b);
bool divides(const Polynomial& d, const Polynomial& a);
bool is_irreducible(const Polynomial& f);

// Element of k = F_q(t) in lowest terms with monic denominator; 0 is 0/1.
class RationalFunction {
 public:
  RationalFunction() = default;
  explicit RationalFunction(const Field& field);
  RationalFunction(Polynomial num);  // NOLINT(google-explicit-constructor)
  RationalFunction(Polynomial num, Polynomial den);

  static RationalFunction constant(const Field& field, FieldElement c);
  // pi^e = t^{-e}.
  static RationalFunction pi_power(const Field& field, int e);

  const Field& field() const { return num_.field(); }
  const Polynomial& num() const noexcept { return num_; }
  const Polynomial& den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_polynomial() const noexcept { return den_.is_one(); }
  bool is_constant() const noexcept { return den_.is_one() && num_.is_constant(); }
  // deg(den) - deg(num); kInfiniteValuation for zero.
  int valuation() const noexcept;

  RationalFunction operator-() const;
  RationalFunction inverse() const;

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);

  bool operator==(const RationalFunction& o) const { return num_ == o.num_ && den_ == o.den_; }

 private:
  Polynomial num_;
  Polynomial den_;
};

// Finitely many terms c * pi^e with every exponent e < cutoff. The exponent of
// t^m is -m. Terms are kept sorted by exponent with nonzero coefficients.
struct LaurentFragment {
  std::vector<std::pair<int, FieldElement>> terms;
  int cutoff = 0;

  bool empty() const noexcept { return terms.empty(); }
  int valuation() const noexcept { return terms.empty() ? kInfiniteValuation : terms.front().first; }
  FieldElement coeff(int exponent) const;

  bool operator==(const LaurentFragment&) const = default;
};

LaurentFragment expand_at_infinity(const RationalFunction& f, int cutoff);
LaurentFragment truncate(const LaurentFragment& x, int cutoff);
// Sum with cutoff min(x.cutoff, y.cutoff).
LaurentFragment add(const LaurentFragment& x, const LaurentFragment& y, const Field& field);
LaurentFragment negate(const LaurentFragment& x, const Field& field);
// Terms with exponent <= 0 read as a polynomial in t.
Polynomial polynomial_part(const LaurentFragment& x, const Field& field);
// The finite sum as an exact element of k (a polynomial in t and 1/t).
RationalFunction to_rational(const LaurentFragment& x, const Field& field);

std::size_t hash_value(const LaurentFragment& x) noexcept;

// Grammar (whitespace ignored):
//   term := [coef '*'] 't' ['^' uint] | coef
//   expression := term (('+'|'-') term)*
// coef is an element code (base-p digits packed little-endian).
Polynomial parse_polynomial(std::string_view text, const Field& field);
// "poly '/' poly", either side optionally parenthesised; a bare polynomial
// is accepted too.
RationalFunction parse_rational(std::string_view text, const Field& field);

std::string to_string(const Polynomial& f);
std::string to_string(const RationalFunction& f);

}  // namespace btq
