#include "btq/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "btq/errors.hpp"

namespace btq {

namespace {

constexpr std::uint32_t kTableLimit = 1024;

using DigitPoly = std::vector<std::uint32_t>;

void strip(DigitPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of a by b over F_p; b monic.
DigitPoly digit_rem(DigitPoly a, const DigitPoly& b, std::uint32_t p) {
  strip(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db && !a.empty()) {
    const std::uint32_t lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      const std::uint64_t sub = static_cast<std::uint64_t>(lead) * b[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    strip(a);
  }
  return a;
}

std::uint64_t checked_pow(std::uint64_t base, std::uint32_t e) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    if (r > (std::uint64_t{1} << 31) / base) throw DomainError("field order too large");
    r *= base;
  }
  return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool is_irreducible_over_prime_field(const std::vector<std::uint32_t>& coeffs, std::uint32_t p) {
  DigitPoly f = coeffs;
  strip(f);
  if (f.size() < 2) return false;
  const std::size_t deg = f.size() - 1;
  if (f.back() != 1) return false;
  // Every monic divisor of degree d <= deg/2 is enumerated by its p^d lower
  // coefficients.
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    const std::uint64_t count = checked_pow(p, static_cast<std::uint32_t>(d));
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      DigitPoly g(d + 1, 0);
      std::uint64_t x = idx;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(x % p);
        x /= p;
      }
      g[d] = 1;
      if (digit_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> default_modulus(std::uint32_t p, std::uint32_t s) {
  // Conway polynomials for the tabulated fields.
  static const std::map<std::pair<std::uint32_t, std::uint32_t>, DigitPoly> table = {
      {{2, 2}, {1, 1, 1}},    {{2, 3}, {1, 1, 0, 1}}, {{2, 4}, {1, 1, 0, 0, 1}},
      {{3, 2}, {2, 2, 1}},    {{3, 3}, {1, 2, 0, 1}}, {{5, 2}, {2, 4, 1}},
      {{7, 2}, {3, 6, 1}},
  };
  if (s <= 1) return {};
  if (auto it = table.find({p, s}); it != table.end()) return it->second;
  const std::uint64_t count = checked_pow(p, s);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    DigitPoly g(s + 1, 0);
    std::uint64_t x = idx;
    for (std::uint32_t i = 0; i < s; ++i) {
      g[i] = static_cast<std::uint32_t>(x % p);
      x /= p;
    }
    g[s] = 1;
    if (is_irreducible_over_prime_field(g, p)) return g;
  }
  throw DomainError("no irreducible polynomial found");
}

Field::Field(FieldSpec spec) : p_(spec.p), s_(spec.s) {
  if (!is_prime(p_)) throw DomainError("characteristic " + std::to_string(p_) + " is not prime");
  if (s_ < 1) throw DomainError("extension degree must be at least 1");
  q_ = static_cast<std::uint32_t>(checked_pow(p_, s_));
  if (s_ > 1) {
    modulus_ = spec.modulus.empty() ? default_modulus(p_, s_) : spec.modulus;
    strip(modulus_);
    if (modulus_.size() != s_ + 1) throw DomainError("modulus must have degree s");
    for (auto c : modulus_) {
      if (c >= p_) throw DomainError("modulus coefficient out of range");
    }
    if (!is_irreducible_over_prime_field(modulus_, p_)) {
      throw DomainError("modulus is not a monic irreducible polynomial over F_p");
    }
  }

  if (q_ <= kTableLimit) {
    add_table_.resize(static_cast<std::size_t>(q_) * q_);
    mul_table_.resize(static_cast<std::size_t>(q_) * q_);
    for (std::uint32_t a = 0; a < q_; ++a) {
      const auto da = digits({a});
      for (std::uint32_t b = 0; b < q_; ++b) {
        const auto db = digits({b});
        DigitPoly sum(s_);
        for (std::uint32_t i = 0; i < s_; ++i) sum[i] = (da[i] + db[i]) % p_;
        add_table_[a * q_ + b] = from_digits(sum).code;
        mul_table_[a * q_ + b] = mul_slow({a}, {b}).code;
      }
    }
    inv_table_.assign(q_, 0);
    for (std::uint32_t a = 1; a < q_; ++a) {
      for (std::uint32_t b = 1; b < q_; ++b) {
        if (mul_table_[a * q_ + b] == 1) {
          inv_table_[a] = b;
          break;
        }
      }
    }
  }

  const auto factors = prime_factors(q_ - 1);
  for (std::uint32_t c = 1; c < q_; ++c) {
    bool generates = true;
    for (auto l : factors) {
      if (pow({c}, (q_ - 1) / l) == one()) {
        generates = false;
        break;
      }
    }
    if (generates) {
      primitive_ = {c};
      break;
    }
  }
  if (q_ <= kTableLimit) {
    log_table_.assign(q_, 0);
    FieldElement x = one();
    for (std::uint32_t k = 0; k + 1 < q_; ++k) {
      log_table_[x.code] = k;
      x = mul(x, primitive_);
    }
  }
}

FieldElement Field::element(std::uint32_t code) const {
  if (code >= q_) {
    throw DomainError("element code " + std::to_string(code) + " out of range for F_" +
                      std::to_string(q_));
  }
  return {code};
}

FieldElement Field::from_integer(std::int64_t n) const {
  const std::int64_t p = p_;
  return {static_cast<std::uint32_t>(((n % p) + p) % p)};
}

std::vector<std::uint32_t> Field::digits(FieldElement a) const {
  std::vector<std::uint32_t> out(s_, 0);
  std::uint32_t x = a.code;
  for (std::uint32_t i = 0; i < s_; ++i) {
    out[i] = x % p_;
    x /= p_;
  }
  return out;
}

FieldElement Field::from_digits(const std::vector<std::uint32_t>& d) const {
  std::uint32_t code = 0;
  for (std::size_t i = d.size(); i-- > 0;) code = code * p_ + d[i] % p_;
  return {code};
}

FieldElement Field::add(FieldElement a, FieldElement b) const {
  if (!add_table_.empty()) return {add_table_[a.code * q_ + b.code]};
  if (s_ == 1) return {static_cast<std::uint32_t>((std::uint64_t{a.code} + b.code) % p_)};
  auto da = digits(a);
  const auto db = digits(b);
  for (std::uint32_t i = 0; i < s_; ++i) da[i] = (da[i] + db[i]) % p_;
  return from_digits(da);
}

FieldElement Field::neg(FieldElement a) const {
  if (s_ == 1) return {a.code == 0 ? 0 : p_ - a.code};
  auto da = digits(a);
  for (auto& d : da) d = (p_ - d) % p_;
  return from_digits(da);
}

FieldElement Field::sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

FieldElement Field::mul_slow(FieldElement a, FieldElement b) const {
  if (s_ == 1) return {static_cast<std::uint32_t>(std::uint64_t{a.code} * b.code % p_)};
  const auto da = digits(a);
  const auto db = digits(b);
  DigitPoly prod(2 * s_ - 1, 0);
  for (std::uint32_t i = 0; i < s_; ++i) {
    for (std::uint32_t j = 0; j < s_; ++j) {
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{da[i]} * db[j]) % p_);
    }
  }
  auto r = digit_rem(prod, modulus_, p_);
  r.resize(s_, 0);
  return from_digits(r);
}

FieldElement Field::mul(FieldElement a, FieldElement b) const {
  if (!mul_table_.empty()) return {mul_table_[a.code * q_ + b.code]};
  return mul_slow(a, b);
}

FieldElement Field::pow(FieldElement a, std::uint64_t e) const {
  FieldElement result = one();
  FieldElement base = a;
  while (e > 0) {
    if (e & 1U) result = mul(result, base);
    base = mul(base, base);
    e >>= 1U;
  }
  return result;
}

FieldElement Field::inv(FieldElement a) const {
  if (a.is_zero()) throw DomainError("inverse of zero in F_" + std::to_string(q_));
  if (!inv_table_.empty()) return {inv_table_[a.code]};
  return pow(a, q_ - 2);
}

std::vector<FieldElement> Field::elements() const {
  std::vector<FieldElement> out;
  out.reserve(q_);
  for (std::uint32_t c = 0; c < q_; ++c) out.push_back({c});
  return out;
}

std::vector<FieldElement> Field::units() const {
  std::vector<FieldElement> out;
  out.reserve(q_ - 1);
  for (std::uint32_t c = 1; c < q_; ++c) out.push_back({c});
  return out;
}

FieldElement Field::primitive_element() const { return primitive_; }

std::uint32_t Field::discrete_log(FieldElement a) const {
  if (a.is_zero()) throw DomainError("discrete log of zero");
  if (!log_table_.empty()) return log_table_[a.code];
  FieldElement x = one();
  for (std::uint32_t k = 0; k + 1 < q_; ++k) {
    if (x == a) return k;
    x = mul(x, primitive_);
  }
  throw DomainError("discrete log not found");
}

// ---------------------------------------------------------------- Polynomial

Polynomial::Polynomial(const Field& field, std::vector<FieldElement> coeffs)
    : field_(&field), coeffs_(std::move(coeffs)) {
  normalize();
}

Polynomial Polynomial::constant(const Field& field, FieldElement c) { return Polynomial(field, {c}); }

Polynomial Polynomial::monomial(const Field& field, FieldElement c, int degree) {
  if (degree < 0) throw DomainError("negative monomial degree");
  std::vector<FieldElement> coeffs(static_cast<std::size_t>(degree) + 1, field.zero());
  coeffs.back() = c;
  return Polynomial(field, std::move(coeffs));
}

void Polynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

FieldElement Polynomial::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return {0};
  return coeffs_[static_cast<std::size_t>(i)];
}

FieldElement Polynomial::leading() const { return coeffs_.empty() ? FieldElement{0} : coeffs_.back(); }

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& c : r.coeffs_) c = field_->neg(c);
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (!field_) field_ = o.field_;
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), FieldElement{0});
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] = field_->add(coeffs_[i], o.coeffs_[i]);
  normalize();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (!field_) field_ = o.field_;
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), FieldElement{0});
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] = field_->sub(coeffs_[i], o.coeffs_[i]);
  normalize();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  const Field* field = a.field_ ? a.field_ : b.field_;
  Polynomial r;
  r.field_ = field;
  if (a.is_zero() || b.is_zero()) return r;
  r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, FieldElement{0});
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      r.coeffs_[i + j] = field->add(r.coeffs_[i + j], field->mul(a.coeffs_[i], b.coeffs_[j]));
    }
  }
  r.normalize();
  return r;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial Polynomial::scaled(FieldElement c) const {
  Polynomial r = *this;
  for (auto& x : r.coeffs_) x = field_->mul(x, c);
  r.normalize();
  return r;
}

Polynomial Polynomial::shifted(int k) const {
  if (is_zero() || k == 0) return *this;
  Polynomial r = *this;
  r.coeffs_.insert(r.coeffs_.begin(), static_cast<std::size_t>(k), FieldElement{0});
  return r;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return scaled(field_->inv(leading()));
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(*field_, field_->one());
  for (unsigned i = 0; i < e; ++i) result *= *this;
  return result;
}

DivMod divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  const Field& field = b.field();
  std::vector<FieldElement> rem = a.coeffs();
  const int db = b.degree();
  const int da = a.degree();
  if (da < db) return {Polynomial(field), a};
  std::vector<FieldElement> quo(static_cast<std::size_t>(da - db) + 1, field.zero());
  const FieldElement lead_inv = field.inv(b.leading());
  for (int k = da - db; k >= 0; --k) {
    const FieldElement c = field.mul(rem[static_cast<std::size_t>(k + db)], lead_inv);
    quo[static_cast<std::size_t>(k)] = c;
    if (c.is_zero()) continue;
    for (int i = 0; i <= db; ++i) {
      auto& slot = rem[static_cast<std::size_t>(k + i)];
      slot = field.sub(slot, field.mul(c, b.coeff(i)));
    }
  }
  rem.resize(static_cast<std::size_t>(db));
  return {Polynomial(field, std::move(quo)), Polynomial(field, std::move(rem))};
}

Polynomial operator%(const Polynomial& a, const Polynomial& b) { return divmod(a, b).remainder; }

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

bool divides(const Polynomial& d, const Polynomial& a) { return (a % d).is_zero(); }

bool is_irreducible(const Polynomial& f) {
  if (f.degree() < 1) return false;
  if (f.degree() == 1) return true;
  const Field& field = f.field();
  const std::uint32_t q = field.order();
  for (int d = 1; d <= f.degree() / 2; ++d) {
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
      if (divides(Polynomial(field, std::move(coeffs)), f)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------- RationalFunction

RationalFunction::RationalFunction(const Field& field)
    : num_(field), den_(Polynomial::constant(field, field.one())) {}

RationalFunction::RationalFunction(Polynomial num)
    : num_(std::move(num)), den_(Polynomial::constant(num_.field(), num_.field().one())) {}

RationalFunction::RationalFunction(Polynomial num, Polynomial den) {
  if (den.is_zero()) throw DomainError("rational function with zero denominator");
  const Field& field = den.field();
  if (num.is_zero()) {
    num_ = Polynomial(field);
    den_ = Polynomial::constant(field, field.one());
    return;
  }
  if (!den.is_constant()) {
    Polynomial g = gcd(num, den);
    if (!g.is_one()) {
      num = divmod(num, g).quotient;
      den = divmod(den, g).quotient;
    }
  }
  if (!den.is_monic()) {
    const FieldElement c = field.inv(den.leading());
    num = num.scaled(c);
    den = den.scaled(c);
  }
  num_ = std::move(num);
  den_ = std::move(den);
}

RationalFunction RationalFunction::constant(const Field& field, FieldElement c) {
  return RationalFunction(Polynomial::constant(field, c));
}

RationalFunction RationalFunction::pi_power(const Field& field, int e) {
  if (e <= 0) return RationalFunction(Polynomial::monomial(field, field.one(), -e));
  return RationalFunction(Polynomial::constant(field, field.one()),
                          Polynomial::monomial(field, field.one(), e));
}

int RationalFunction::valuation() const noexcept {
  if (num_.is_zero()) return kInfiniteValuation;
  return den_.degree() - num_.degree();
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunction RationalFunction::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero rational function");
  return RationalFunction(den_, num_);
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_.is_one() && b.den_.is_one()) return RationalFunction(a.num_ + b.num_);
  if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero()) return a;
  if (b.is_zero()) return b;
  if (a.den_.is_one() && b.den_.is_one()) return RationalFunction(a.num_ * b.num_);
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw DomainError("division by zero rational function");
  return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

// ----------------------------------------------------------- LaurentFragment

FieldElement LaurentFragment::coeff(int exponent) const {
  auto it = std::lower_bound(terms.begin(), terms.end(), exponent,
                             [](const auto& term, int e) { return term.first < e; });
  if (it != terms.end() && it->first == exponent) return it->second;
  return {0};
}

LaurentFragment expand_at_infinity(const RationalFunction& f, int cutoff) {
  LaurentFragment out;
  out.cutoff = cutoff;
  if (f.is_zero()) return out;
  const Field& field = f.field();
  const Polynomial& num = f.num();
  const Polynomial& den = f.den();
  const int dn = num.degree();
  const int dd = den.degree();
  const int v = dd - dn;
  const int count = cutoff - v;
  if (count <= 0) return out;
  // f = pi^v * rev(num)(pi) / rev(den)(pi) as a power series in pi.
  auto rev_num = [&](int k) { return k <= dn ? num.coeff(dn - k) : field.zero(); };
  auto rev_den = [&](int k) { return k <= dd ? den.coeff(dd - k) : field.zero(); };
  const FieldElement lead_inv = field.inv(rev_den(0));
  std::vector<FieldElement> series(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    FieldElement acc = rev_num(k);
    for (int j = 1; j <= std::min(k, dd); ++j) {
      acc = field.sub(acc, field.mul(rev_den(j), series[static_cast<std::size_t>(k - j)]));
    }
    series[static_cast<std::size_t>(k)] = field.mul(acc, lead_inv);
    if (!series[static_cast<std::size_t>(k)].is_zero()) {
      out.terms.emplace_back(v + k, series[static_cast<std::size_t>(k)]);
    }
  }
  return out;
}

LaurentFragment truncate(const LaurentFragment& x, int cutoff) {
  LaurentFragment out;
  out.cutoff = cutoff;
  for (const auto& term : x.terms) {
    if (term.first >= cutoff) break;
    out.terms.push_back(term);
  }
  return out;
}

LaurentFragment add(const LaurentFragment& x, const LaurentFragment& y, const Field& field) {
  LaurentFragment out;
  out.cutoff = std::min(x.cutoff, y.cutoff);
  auto i = x.terms.begin();
  auto j = y.terms.begin();
  auto push = [&](int e, FieldElement c) {
    if (e < out.cutoff && !c.is_zero()) out.terms.emplace_back(e, c);
  };
  while (i != x.terms.end() || j != y.terms.end()) {
    if (j == y.terms.end() || (i != x.terms.end() && i->first < j->first)) {
      push(i->first, i->second);
      ++i;
    } else if (i == x.terms.end() || j->first < i->first) {
      push(j->first, j->second);
      ++j;
    } else {
      push(i->first, field.add(i->second, j->second));
      ++i;
      ++j;
    }
  }
  return out;
}

LaurentFragment negate(const LaurentFragment& x, const Field& field) {
  LaurentFragment out = x;
  for (auto& term : out.terms) term.second = field.neg(term.second);
  return out;
}

Polynomial polynomial_part(const LaurentFragment& x, const Field& field) {
  std::vector<FieldElement> coeffs;
  for (const auto& [e, c] : x.terms) {
    if (e > 0) break;
    const auto deg = static_cast<std::size_t>(-e);
    if (coeffs.size() <= deg) coeffs.resize(deg + 1, field.zero());
    coeffs[deg] = c;
  }
  return Polynomial(field, std::move(coeffs));
}

RationalFunction to_rational(const LaurentFragment& x, const Field& field) {
  if (x.terms.empty()) return RationalFunction(field);
  const int m = std::max(0, x.terms.back().first);
  // Multiply through by t^m so every exponent becomes a polynomial degree.
  std::vector<FieldElement> coeffs;
  for (const auto& [e, c] : x.terms) {
    const auto deg = static_cast<std::size_t>(m - e);
    if (coeffs.size() <= deg) coeffs.resize(deg + 1, field.zero());
    coeffs[deg] = c;
  }
  return RationalFunction(Polynomial(field, std::move(coeffs)),
                          Polynomial::monomial(field, field.one(), m));
}

std::size_t hash_value(const LaurentFragment& x) noexcept {
  std::size_t h = std::hash<int>{}(x.cutoff);
  for (const auto& [e, c] : x.terms) {
    h ^= std::hash<long long>{}((static_cast<long long>(e) << 32) ^ c.code) + 0x9e3779b97f4a7c15ULL +
         (h << 6) + (h >> 2);
  }
  return h;
}

// ------------------------------------------------------------------- parsing

namespace {

class Cursor {
 public:
  Cursor(std::string_view text, std::size_t offset) : text_(text), offset_(offset) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::uint64_t read_uint() {
    skip_space();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      fail("expected unsigned integer");
    }
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > (std::uint64_t{1} << 40)) fail("integer too large");
      ++pos_;
    }
    return v;
  }
  std::size_t position() const { return offset_ + pos_; }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, position()); }

 private:
  std::string_view text_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};

Polynomial parse_poly_at(std::string_view text, std::size_t offset, const Field& field) {
  Cursor cur(text, offset);
  Polynomial result(field);
  if (cur.done()) cur.fail("empty polynomial");
  bool negative = cur.accept('-');
  while (true) {
    FieldElement coef = field.one();
    int degree = 0;
    if (cur.peek() == 't') {
      cur.expect('t');
      degree = 1;
      if (cur.accept('^')) degree = static_cast<int>(cur.read_uint());
    } else {
      const std::size_t at = cur.position();
      const std::uint64_t value = cur.read_uint();
      if (value >= field.order()) {
        throw ParseError("coefficient " + std::to_string(value) + " out of range for F_" +
                             std::to_string(field.order()),
                         at);
      }
      coef = {static_cast<std::uint32_t>(value)};
      if (cur.accept('*')) {
        cur.expect('t');
        degree = 1;
        if (cur.accept('^')) degree = static_cast<int>(cur.read_uint());
      }
    }
    if (negative) coef = field.neg(coef);
    result += Polynomial::monomial(field, coef, degree);
    if (cur.done()) break;
    if (cur.accept('+')) {
      negative = false;
    } else if (cur.accept('-')) {
      negative = true;
    } else {
      cur.fail("expected '+' or '-'");
    }
  }
  return result;
}

// Strips one pair of enclosing parentheses and surrounding whitespace.
std::pair<std::string_view, std::size_t> unwrap(std::string_view text, std::size_t offset) {
  std::size_t b = 0;
  std::size_t e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  if (e - b >= 2 && text[b] == '(' && text[e - 1] == ')') {
    return {text.substr(b + 1, e - b - 2), offset + b + 1};
  }
  return {text.substr(b, e - b), offset + b};
}

}  // namespace

Polynomial parse_polynomial(std::string_view text, const Field& field) {
  auto [body, offset] = unwrap(text, 0);
  return parse_poly_at(body, offset, field);
}

RationalFunction parse_rational(std::string_view text, const Field& field) {
  int paren = 0;
  std::size_t slash = std::string_view::npos;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++paren;
    if (text[i] == ')') {
      if (--paren < 0) throw ParseError("unbalanced ')'", i);
    }
    if (text[i] == '/' && paren == 0) {
      if (slash != std::string_view::npos) throw ParseError("more than one '/'", i);
      slash = i;
    }
  }
  if (paren != 0) throw ParseError("unbalanced '('", text.size());
  if (slash == std::string_view::npos) {
    auto [body, offset] = unwrap(text, 0);
    return RationalFunction(parse_poly_at(body, offset, field));
  }
  auto [num_text, num_off] = unwrap(text.substr(0, slash), 0);
  auto [den_text, den_off] = unwrap(text.substr(slash + 1), slash + 1);
  Polynomial num = parse_poly_at(num_text, num_off, field);
  Polynomial den = parse_poly_at(den_text, den_off, field);
  if (den.is_zero()) throw ParseError("zero denominator", den_off);
  return RationalFunction(std::move(num), std::move(den));
}

std::string to_string(const Polynomial& f) {
  if (f.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int k = f.degree(); k >= 0; --k) {
    const FieldElement c = f.coeff(k);
    if (c.is_zero()) continue;
    if (!first) out << '+';
    first = false;
    if (k == 0) {
      out << c.code;
      continue;
    }
    if (c.code != 1) out << c.code << '*';
    out << 't';
    if (k > 1) out << '^' << k;
  }
  return out.str();
}

std::string to_string(const RationalFunction& f) {
  if (f.is_polynomial()) return to_string(f.num());
  auto wrap = [](const Polynomial& p) {
    const std::string s = to_string(p);
    return s.find('+') == std::string::npos ? s : "(" + s + ")";
  };
  return wrap(f.num()) + "/" + wrap(f.den());
}

}  // namespace btq
