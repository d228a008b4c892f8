#pragma once

// Finite fields as relative towers F_p ⊂ F_{p^a} ⊂ ... with exact arithmetic.
//
// Every element of a field of order Q is identified with a canonical code in
// [0, Q). For F_p the code is the residue. For an extension E = B[y]/(h) of
// degree m the element c_0 + c_1 y + ... + c_{m-1} y^{m-1} has code
// sum_i code(c_i) * |B|^i. Two consequences are used throughout:
//   * the base-p digits of a code are the prime-field coordinates of the
//     element in the tower-monomial basis, so addition is digitwise mod p;
//   * a subfield element embeds as the constant polynomial, so its code is
//     unchanged by the inclusion F ⊂ E.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "arstab/error.hpp"

namespace arstab {

class FieldElement;

namespace detail {
struct FieldData;
}

class Field {
 public:
  /// F_p for prime p <= 2^31. Throws CompositeModulus otherwise.
  static Field prime(std::uint64_t p);

  /// base[y]/(modulus). `modulus` holds base codes low-to-high and must be
  /// monic and irreducible of degree >= 2; both are verified.
  static Field with_modulus(const Field& base, std::vector<std::uint64_t> modulus);

  std::uint64_t characteristic() const;
  std::uint64_t order() const;
  unsigned absolute_degree() const;
  /// Degree over the immediate base; 1 for a prime field.
  unsigned degree() const;
  /// Number of extension steps above the prime field.
  std::size_t depth() const;
  bool is_prime() const { return depth() == 0; }

  /// Immediate base field. Throws NotAnExtension for prime fields.
  Field base() const;
  /// The tower member `depth` steps above the prime field.
  Field level(std::size_t depth) const;
  /// Monic modulus over the immediate base, low-to-high (empty for F_p).
  std::span<const std::uint64_t> modulus() const;

  /// True if `sub` is a member of this field's tower (including itself).
  bool contains(const Field& sub) const;

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement element(std::uint64_t code) const;
  /// Builds c_0 + c_1 y + ... from coefficients over the immediate base.
  FieldElement from_coefficients(std::span<const FieldElement> coeffs) const;

  // Code-level kernel used by hot loops. Inputs must be valid codes.
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t neg(std::uint64_t a) const;
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t inv(std::uint64_t a) const;
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  /// Coordinates over the immediate base.
  std::vector<std::uint64_t> coefficients(std::uint64_t code) const;

  /// Short human-readable name such as "F_2^(2,3)" (p, then relative degrees).
  std::string name() const;

  friend bool operator==(const Field& a, const Field& b);
  friend Field extend(const Field& base, unsigned m);

 private:
  explicit Field(std::shared_ptr<const detail::FieldData> data) : data_(std::move(data)) {}
  std::shared_ptr<const detail::FieldData> data_;
};

class FieldElement {
 public:
  FieldElement(Field field, std::uint64_t code);

  const Field& field() const { return field_; }
  std::uint64_t code() const { return code_; }
  bool is_zero() const { return code_ == 0; }

  std::vector<FieldElement> coefficients() const;
  FieldElement inv() const;
  FieldElement pow(std::uint64_t e) const;

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o);

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  friend bool operator==(const FieldElement& a, const FieldElement& b);

 private:
  void require_same_field(const FieldElement& o) const;

  Field field_;
  std::uint64_t code_;
};

using Vector = std::vector<FieldElement>;

bool is_prime(std::uint64_t n);
/// Returns (p, k) with n = p^k, or (0, 0) when n is not a prime power.
std::pair<std::uint64_t, unsigned> prime_power_decompose(std::uint64_t n);
bool is_prime_power(std::uint64_t n);

Field make_prime_field(std::uint64_t p);
/// Degree-m extension of `base` using the lexicographically smallest monic
/// irreducible modulus (sequence c_0, c_1, ..., c_{m-1}, c_0 most
/// significant). m == 1 returns `base`.
Field extend(const Field& base, unsigned m);
/// Canonical F_q: the prime field for prime q, else a direct extension of F_p.
Field field_of_order(std::uint64_t q);

/// Residue class of the tower variable of an extension.
FieldElement generator(const Field& field);
/// Tr_{E/F}(x) = sum_{i<k} x^(|F|^i) where k = [E:F].
FieldElement relative_trace(const FieldElement& x, const Field& down_to);
/// Re-labels an element of a tower member as an element of `to`.
FieldElement embed(const FieldElement& x, const Field& to);

}  // namespace arstab
