#pragma once

#include <cstdint>
#include <limits>

#include "arstab/error.hpp"

namespace arstab {

// Overflow-checked 64-bit helpers. Proof arithmetic must be exact, so an
// overflow is an error rather than a wrap.

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorKind::SizeGuard, "integer overflow in add");
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Error(ErrorKind::SizeGuard, "integer overflow in sub");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::SizeGuard, "integer overflow in mul");
  return r;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::SizeGuard, "integer overflow in mul");
  return r;
}

inline std::int64_t checked_pow(std::int64_t base, std::uint64_t exp) {
  std::int64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

inline std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

/// base^exp clamped to `cap`; exact whenever the true value is <= cap.
inline std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && r > cap / base) return cap;
    r *= base;
    if (r >= cap) return cap;
  }
  return r;
}

/// Floor and ceiling division for signed operands, den > 0.
inline std::int64_t floor_div(std::int64_t num, std::int64_t den) {
  std::int64_t q = num / den;
  if ((num % den != 0) && (num < 0)) --q;
  return q;
}

inline std::int64_t ceil_div(std::int64_t num, std::int64_t den) {
  std::int64_t q = num / den;
  if ((num % den != 0) && (num > 0)) ++q;
  return q;
}

}  // namespace arstab
