#include "arstab/field.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "arstab/checked.hpp"

namespace arstab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::CompositeModulus: return "CompositeModulus";
    case ErrorKind::SizeGuard: return "SizeGuard";
    case ErrorKind::MixedFields: return "MixedFields";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NotAnExtension: return "NotAnExtension";
    case ErrorKind::NotInTower: return "NotInTower";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::OrderMismatch: return "OrderMismatch";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::CertificateInvalid: return "CertificateInvalid";
    case ErrorKind::NotEnoughPoints: return "NotEnoughPoints";
    case ErrorKind::TowerMismatch: return "TowerMismatch";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace detail {

struct FieldData {
  std::uint64_t p = 0;
  std::uint64_t order = 0;
  unsigned abs_degree = 1;
  unsigned degree = 1;
  std::size_t depth = 0;
  std::shared_ptr<const FieldData> base;
  std::vector<std::uint64_t> modulus;
  // Moduli of every level from the bottom up; structural identity.
  std::vector<std::vector<std::uint64_t>> signature;

  // Dense tables for small fields (order <= kTableOrder).
  std::vector<std::uint16_t> add_table;
  std::vector<std::uint16_t> mul_table;
  // Log/antilog tables (order <= kLogOrder).
  std::vector<std::uint32_t> log_table;
  std::vector<std::uint64_t> exp_table;
};

}  // namespace detail

namespace {

using detail::FieldData;
using Poly = std::vector<std::uint64_t>;

constexpr std::uint64_t kTableOrder = 1024;
constexpr std::uint64_t kLogOrder = 1u << 16;
constexpr std::uint64_t kMaxPrime = 1ull << 31;
constexpr std::uint64_t kMaxOrder = 1ull << 63;

std::uint64_t digit_add(const FieldData& f, std::uint64_t a, std::uint64_t b) {
  if (f.p == 2) return a ^ b;
  if (f.depth == 0) {
    std::uint64_t s = a + b;
    return s >= f.p ? s - f.p : s;
  }
  std::uint64_t r = 0, scale = 1;
  while (a != 0 || b != 0) {
    std::uint64_t s = a % f.p + b % f.p;
    if (s >= f.p) s -= f.p;
    r += s * scale;
    scale *= f.p;
    a /= f.p;
    b /= f.p;
  }
  return r;
}

std::uint64_t digit_neg(const FieldData& f, std::uint64_t a) {
  if (f.p == 2) return a;
  if (f.depth == 0) return a == 0 ? 0 : f.p - a;
  std::uint64_t r = 0, scale = 1;
  while (a != 0) {
    std::uint64_t d = a % f.p;
    r += (d == 0 ? 0 : f.p - d) * scale;
    scale *= f.p;
    a /= f.p;
  }
  return r;
}

std::uint64_t f_add(const FieldData& f, std::uint64_t a, std::uint64_t b) {
  if (!f.add_table.empty()) return f.add_table[a * f.order + b];
  return digit_add(f, a, b);
}

std::uint64_t f_neg(const FieldData& f, std::uint64_t a) { return digit_neg(f, a); }

std::uint64_t f_sub(const FieldData& f, std::uint64_t a, std::uint64_t b) {
  return f_add(f, a, f_neg(f, b));
}

std::uint64_t f_mul(const FieldData& f, std::uint64_t a, std::uint64_t b);

// --- Polynomials over a field (codes, low-to-high, trimmed) ---------------

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const FieldData& f, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      r[i + j] = f_add(f, r[i + j], f_mul(f, a[i], b[j]));
    }
  }
  trim(r);
  return r;
}

std::uint64_t f_inv(const FieldData& f, std::uint64_t a);

// Remainder of a modulo b (b nonzero).
Poly poly_mod(const FieldData& f, Poly a, const Poly& b) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const std::uint64_t lead_inv = f_inv(f, b.back());
  while (a.size() >= b.size()) {
    const std::uint64_t c = f_mul(f, a.back(), lead_inv);
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t j = 0; j <= db; ++j) {
      a[shift + j] = f_sub(f, a[shift + j], f_mul(f, c, b[j]));
    }
    assert(a.back() == 0);
    a.pop_back();
    trim(a);
  }
  return a;
}

Poly poly_gcd(const FieldData& f, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly poly_powmod(const FieldData& f, Poly base, std::uint64_t e, const Poly& m) {
  Poly result{1};
  base = poly_mod(f, std::move(base), m);
  while (e > 0) {
    if (e & 1) result = poly_mod(f, poly_mul(f, result, base), m);
    e >>= 1;
    if (e) base = poly_mod(f, poly_mul(f, base, base), m);
  }
  return result;
}

// Monic f of degree m over F_s is irreducible iff gcd(f, x^(s^j) - x) = 1
// for every 1 <= j <= m/2.
bool poly_irreducible(const FieldData& base, const Poly& f) {
  const std::size_t m = f.size() - 1;
  if (m <= 1) return m == 1;
  if (f[0] == 0) return false;
  // Fast path: a root in the base field means a linear factor.
  if (base.order <= 4096) {
    for (std::uint64_t x = 0; x < base.order; ++x) {
      std::uint64_t v = 0;
      for (std::size_t i = f.size(); i-- > 0;) v = f_add(base, f_mul(base, v, x), f[i]);
      if (v == 0) return false;
    }
  }
  const Poly x{0, 1};
  Poly h = x;
  for (std::size_t j = 1; j <= m / 2; ++j) {
    h = poly_powmod(base, h, base.order, f);
    Poly diff = h;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = f_sub(base, diff[1], 1);
    trim(diff);
    if (diff.empty()) return false;
    Poly g = poly_gcd(base, f, diff);
    if (g.size() > 1) return false;
  }
  return true;
}

Poly code_to_poly(const FieldData& f, std::uint64_t code) {
  const std::uint64_t s = f.base->order;
  Poly r(f.degree, 0);
  for (unsigned i = 0; i < f.degree; ++i) {
    r[i] = code % s;
    code /= s;
  }
  return r;
}

std::uint64_t poly_to_code(const FieldData& f, const Poly& a) {
  const std::uint64_t s = f.base->order;
  std::uint64_t code = 0;
  for (std::size_t i = a.size(); i-- > 0;) code = code * s + a[i];
  return code;
}

std::uint64_t slow_mul(const FieldData& f, std::uint64_t a, std::uint64_t b) {
  if (f.depth == 0) return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % f.p);
  const FieldData& base = *f.base;
  Poly pa = code_to_poly(f, a), pb = code_to_poly(f, b);
  trim(pa);
  trim(pb);
  Poly prod = poly_mul(base, pa, pb);
  if (prod.size() > f.degree) prod = poly_mod(base, std::move(prod), f.modulus);
  return poly_to_code(f, prod);
}

std::uint64_t f_mul(const FieldData& f, std::uint64_t a, std::uint64_t b) {
  if (!f.mul_table.empty()) return f.mul_table[a * f.order + b];
  if (a == 0 || b == 0) return 0;
  if (!f.log_table.empty()) return f.exp_table[f.log_table[a] + f.log_table[b]];
  return slow_mul(f, a, b);
}

std::uint64_t f_pow(const FieldData& f, std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e > 0) {
    if (e & 1) r = f_mul(f, r, a);
    e >>= 1;
    if (e) a = f_mul(f, a, a);
  }
  return r;
}

std::uint64_t f_inv(const FieldData& f, std::uint64_t a) {
  if (a == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  if (!f.log_table.empty()) {
    const std::uint64_t n = f.order - 1;
    return f.exp_table[(n - f.log_table[a]) % n];
  }
  return f_pow(f, a, f.order - 2);
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

void build_tables(FieldData& f) {
  if (f.order <= kTableOrder) {
    const std::size_t n = f.order;
    f.add_table.resize(n * n);
    f.mul_table.resize(n * n);
    for (std::uint64_t a = 0; a < n; ++a) {
      for (std::uint64_t b = 0; b < n; ++b) {
        f.add_table[a * n + b] = static_cast<std::uint16_t>(digit_add(f, a, b));
        f.mul_table[a * n + b] = static_cast<std::uint16_t>(slow_mul(f, a, b));
      }
    }
  }
  if (f.order > 2 && f.order <= kLogOrder) {
    const std::uint64_t n = f.order - 1;
    const auto factors = prime_factors(n);
    std::uint64_t g = 2;
    for (;; ++g) {
      bool primitive = true;
      for (auto r : factors) {
        if (f_pow(f, g, n / r) == 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) break;
    }
    f.exp_table.resize(2 * n);
    f.log_table.assign(f.order, 0);
    std::uint64_t x = 1;
    for (std::uint64_t k = 0; k < n; ++k) {
      f.exp_table[k] = x;
      f.exp_table[k + n] = x;
      f.log_table[x] = static_cast<std::uint32_t>(k);
      x = f.mul_table.empty() ? slow_mul(f, x, g) : f_mul(f, x, g);
    }
  }
}

}  // namespace

// --- number theory ---------------------------------------------------------

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::pair<std::uint64_t, unsigned> prime_power_decompose(std::uint64_t n) {
  if (n < 2) return {0, 0};
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return {n, 1};
  unsigned k = 0;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  if (n != 1) return {0, 0};
  return {p, k};
}

bool is_prime_power(std::uint64_t n) { return prime_power_decompose(n).first != 0; }

// --- Field -----------------------------------------------------------------

Field Field::prime(std::uint64_t p) {
  if (p > kMaxPrime) throw Error(ErrorKind::SizeGuard, "prime modulus exceeds 2^31");
  if (!arstab::is_prime(p)) throw Error(ErrorKind::CompositeModulus, std::to_string(p) + " is not prime");
  auto data = std::make_shared<FieldData>();
  data->p = p;
  data->order = p;
  build_tables(*data);
  return Field(std::move(data));
}

Field Field::with_modulus(const Field& base, std::vector<std::uint64_t> modulus) {
  if (modulus.size() < 3) throw Error(ErrorKind::NotAnExtension, "modulus degree must be >= 2");
  const auto& b = *base.data_;
  for (auto c : modulus) {
    if (c >= b.order) throw Error(ErrorKind::ParseError, "modulus coefficient out of range");
  }
  if (modulus.back() != 1) throw Error(ErrorKind::ParseError, "modulus is not monic");
  const unsigned m = static_cast<unsigned>(modulus.size() - 1);
  unsigned __int128 order = 1;
  for (unsigned i = 0; i < m; ++i) {
    order *= b.order;
    if (order > kMaxOrder) throw Error(ErrorKind::SizeGuard, "field order exceeds 2^63");
  }
  if (!poly_irreducible(b, modulus)) throw Error(ErrorKind::CompositeModulus, "modulus is reducible");
  auto data = std::make_shared<FieldData>();
  data->p = b.p;
  data->order = static_cast<std::uint64_t>(order);
  data->abs_degree = b.abs_degree * m;
  data->degree = m;
  data->depth = b.depth + 1;
  data->base = base.data_;
  data->modulus = std::move(modulus);
  data->signature = b.signature;
  data->signature.push_back(data->modulus);
  build_tables(*data);
  return Field(std::move(data));
}

std::uint64_t Field::characteristic() const { return data_->p; }
std::uint64_t Field::order() const { return data_->order; }
unsigned Field::absolute_degree() const { return data_->abs_degree; }
unsigned Field::degree() const { return data_->degree; }
std::size_t Field::depth() const { return data_->depth; }

Field Field::base() const {
  if (!data_->base) throw Error(ErrorKind::NotAnExtension, "prime field has no base");
  return Field(data_->base);
}

Field Field::level(std::size_t depth) const {
  if (depth > data_->depth) throw Error(ErrorKind::NotInTower, "level above the field");
  auto d = data_;
  while (d->depth > depth) d = d->base;
  return Field(d);
}

std::span<const std::uint64_t> Field::modulus() const { return data_->modulus; }

bool Field::contains(const Field& sub) const {
  if (sub.depth() > depth()) return false;
  return level(sub.depth()) == sub;
}

FieldElement Field::zero() const { return FieldElement(*this, 0); }
FieldElement Field::one() const { return FieldElement(*this, 1); }
FieldElement Field::element(std::uint64_t code) const { return FieldElement(*this, code); }

FieldElement Field::from_coefficients(std::span<const FieldElement> coeffs) const {
  if (is_prime()) {
    if (coeffs.size() != 1) throw Error(ErrorKind::DimensionMismatch, "prime field takes one coefficient");
    if (!(coeffs[0].field() == *this)) throw Error(ErrorKind::MixedFields, "coefficient not in field");
    return coeffs[0];
  }
  if (coeffs.size() != degree()) throw Error(ErrorKind::DimensionMismatch, "wrong number of coefficients");
  const Field b = base();
  Poly p(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (!(coeffs[i].field() == b)) throw Error(ErrorKind::MixedFields, "coefficient not in base field");
    p[i] = coeffs[i].code();
  }
  return FieldElement(*this, poly_to_code(*data_, p));
}

std::uint64_t Field::add(std::uint64_t a, std::uint64_t b) const { return f_add(*data_, a, b); }
std::uint64_t Field::sub(std::uint64_t a, std::uint64_t b) const { return f_sub(*data_, a, b); }
std::uint64_t Field::neg(std::uint64_t a) const { return f_neg(*data_, a); }
std::uint64_t Field::mul(std::uint64_t a, std::uint64_t b) const { return f_mul(*data_, a, b); }
std::uint64_t Field::inv(std::uint64_t a) const { return f_inv(*data_, a); }
std::uint64_t Field::pow(std::uint64_t a, std::uint64_t e) const { return f_pow(*data_, a, e); }

std::vector<std::uint64_t> Field::coefficients(std::uint64_t code) const {
  if (is_prime()) return {code};
  return code_to_poly(*data_, code);
}

std::string Field::name() const {
  std::ostringstream os;
  os << "F_" << data_->p;
  if (data_->depth > 0) {
    std::vector<unsigned> degrees;
    for (auto d = data_; d->depth > 0; d = d->base) degrees.push_back(d->degree);
    std::reverse(degrees.begin(), degrees.end());
    os << "^(";
    for (std::size_t i = 0; i < degrees.size(); ++i) os << (i ? "," : "") << degrees[i];
    os << ")";
  }
  return os.str();
}

bool operator==(const Field& a, const Field& b) {
  if (a.data_ == b.data_) return true;
  return a.data_->p == b.data_->p && a.data_->signature == b.data_->signature;
}

// --- FieldElement ----------------------------------------------------------

FieldElement::FieldElement(Field field, std::uint64_t code) : field_(std::move(field)), code_(code) {
  if (code_ >= field_.order()) throw Error(ErrorKind::ParseError, "element code out of range");
}

std::vector<FieldElement> FieldElement::coefficients() const {
  if (field_.is_prime()) return {*this};
  const Field b = field_.base();
  std::vector<FieldElement> out;
  for (auto c : field_.coefficients(code_)) out.emplace_back(b, c);
  return out;
}

void FieldElement::require_same_field(const FieldElement& o) const {
  if (!(field_ == o.field_)) {
    throw Error(ErrorKind::MixedFields, field_.name() + " vs " + o.field_.name());
  }
}

FieldElement FieldElement::inv() const { return FieldElement(field_, field_.inv(code_)); }
FieldElement FieldElement::pow(std::uint64_t e) const { return FieldElement(field_, field_.pow(code_, e)); }
FieldElement FieldElement::operator-() const { return FieldElement(field_, field_.neg(code_)); }

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  require_same_field(o);
  code_ = field_.add(code_, o.code_);
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  require_same_field(o);
  code_ = field_.sub(code_, o.code_);
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  require_same_field(o);
  code_ = field_.mul(code_, o.code_);
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& o) {
  require_same_field(o);
  code_ = field_.mul(code_, field_.inv(o.code_));
  return *this;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  return a.code_ == b.code_ && a.field_ == b.field_;
}

// --- free functions --------------------------------------------------------

Field make_prime_field(std::uint64_t p) { return Field::prime(p); }

Field extend(const Field& base, unsigned m) {
  if (m == 0) throw Error(ErrorKind::NotAnExtension, "extension degree must be >= 1");
  if (m == 1) return base;
  const std::uint64_t s = base.order();
  unsigned __int128 order = 1;
  for (unsigned i = 0; i < m; ++i) {
    order *= s;
    if (order > kMaxOrder) throw Error(ErrorKind::SizeGuard, "field order exceeds 2^63");
  }
  // Enumerate (c_0, ..., c_{m-1}) in lexicographic order: c_0 is the most
  // significant digit of the counter t.
  Poly f(m + 1, 0);
  f[m] = 1;
  const std::uint64_t total = static_cast<std::uint64_t>(order);
  for (std::uint64_t t = 0; t < total; ++t) {
    std::uint64_t rest = t;
    for (unsigned i = m; i-- > 0;) {
      f[i] = rest % s;
      rest /= s;
    }
    if (f[0] == 0) {
      // Everything with c_0 = 0 is divisible by y; jump to c_0 = 1.
      t = total / s - 1;
      continue;
    }
    if (poly_irreducible(*base.data_, f)) return Field::with_modulus(base, f);
  }
  throw Error(ErrorKind::NotAnExtension, "no irreducible polynomial found");
}

Field field_of_order(std::uint64_t q) {
  auto [p, k] = prime_power_decompose(q);
  if (p == 0) throw Error(ErrorKind::CompositeModulus, std::to_string(q) + " is not a prime power");
  return extend(Field::prime(p), k);
}

FieldElement generator(const Field& field) {
  if (field.is_prime()) throw Error(ErrorKind::NotAnExtension, field.name() + " is a prime field");
  return field.element(field.base().order());
}

FieldElement relative_trace(const FieldElement& x, const Field& down_to) {
  const Field& top = x.field();
  if (!top.contains(down_to)) throw Error(ErrorKind::NotInTower, down_to.name() + " not below " + top.name());
  const unsigned k = top.absolute_degree() / down_to.absolute_degree();
  const std::uint64_t s = down_to.order();
  std::uint64_t acc = 0, term = x.code();
  for (unsigned i = 0; i < k; ++i) {
    acc = top.add(acc, term);
    term = top.pow(term, s);
  }
  if (acc >= down_to.order()) throw Error(ErrorKind::NotInTower, "trace left the subfield");
  return down_to.element(acc);
}

FieldElement embed(const FieldElement& x, const Field& to) {
  if (to.contains(x.field())) return to.element(x.code());
  if (x.field().contains(to)) {
    if (x.code() >= to.order()) throw Error(ErrorKind::NotInTower, "element does not lie in subfield");
    return to.element(x.code());
  }
  throw Error(ErrorKind::NotInTower, x.field().name() + " and " + to.name() + " are not in one tower");
}

}  // namespace arstab
