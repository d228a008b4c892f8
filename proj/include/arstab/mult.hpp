#pragma once

#include <utility>

#include "arstab/tensor.hpp"

namespace arstab {

/// Mult_d(top/base): the d-tensor over `base` of (d-1)-ary multiplication in
/// `top`. `base` must be a member of `top`'s tower.
struct MultSpec {
  Field base;
  Field top;
  unsigned arity;

  /// [top : base].
  unsigned extension_degree() const { return top.absolute_degree() / base.absolute_degree(); }
  void validate() const;
  std::string id() const;
};

/// Coordinates of x over `base` in the tower-monomial basis (for a direct
/// extension: the power basis 1, α, ..., α^{n-1}).
std::vector<std::uint64_t> coordinates(const FieldElement& x, const Field& base);
/// Inverse of coordinates().
FieldElement from_coordinates(const Field& top, const Field& base, std::span<const std::uint64_t> coords);

/// Entry [i_1..i_{d-1}, j] = j-th coordinate of b_{i_1} ... b_{i_{d-1}}; the
/// last leg carries coordinate functionals, so
/// T(x_1, ..., x_{d-1}, z) = <z, coords(x_1 ... x_{d-1})>.
Tensor mult_tensor(const MultSpec& spec);

struct QmonMaps {
  LinearMap f;  // F_{q^m} -> F_{q^n}, α^i -> β^i
  LinearMap g;  // F_{q^n} -> F_{q^m}, β^i -> α^i
  Field small;  // F_{q^m}
  Field large;  // F_{q^n}
  Field base;   // F_q
};

/// The two linear maps of the approximate-monotonicity argument. Throws
/// HypothesisViolated unless n - 1 >= (d - 1)(m - 1).
QmonMaps qmon_maps(std::uint64_t q, unsigned m, unsigned n, unsigned d);

}  // namespace arstab
