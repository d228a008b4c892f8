#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "arstab/field.hpp"

namespace arstab {

/// Dense order-d multilinear form over a finite field. Coefficients are kept
/// as field codes in row-major order, leg 0 slowest.
class Tensor {
 public:
  /// Zero tensor. Requires at least two legs; a zero dimension gives the
  /// empty tensor.
  Tensor(Field field, std::vector<std::size_t> dims);
  Tensor(Field field, std::vector<std::size_t> dims, std::vector<std::uint64_t> codes);

  const Field& field() const { return field_; }
  std::size_t order() const { return dims_.size(); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t dim(std::size_t leg) const { return dims_[leg]; }
  std::size_t size() const { return codes_.size(); }
  const std::vector<std::size_t>& strides() const { return strides_; }

  std::span<const std::uint64_t> codes() const { return codes_; }
  std::span<std::uint64_t> codes() { return codes_; }

  std::size_t flat_index(std::span<const std::size_t> index) const;
  FieldElement operator()(std::span<const std::size_t> index) const;
  FieldElement at(std::initializer_list<std::size_t> index) const;
  void set(std::span<const std::size_t> index, const FieldElement& value);
  void set(std::initializer_list<std::size_t> index, const FieldElement& value);

  bool is_zero() const;

  friend bool operator==(const Tensor& a, const Tensor& b);

 private:
  Field field_;
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> strides_;
  std::vector<std::uint64_t> codes_;
};

/// rows x cols matrix over a field acting on coordinate column vectors.
class LinearMap {
 public:
  LinearMap(Field field, std::size_t rows, std::size_t cols);
  LinearMap(Field field, std::size_t rows, std::size_t cols, std::vector<std::uint64_t> codes);

  static LinearMap identity(Field field, std::size_t n);
  static LinearMap zero(Field field, std::size_t rows, std::size_t cols) {
    return LinearMap(std::move(field), rows, cols);
  }

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::uint64_t code(std::size_t r, std::size_t c) const { return codes_[r * cols_ + c]; }
  void set_code(std::size_t r, std::size_t c, std::uint64_t v) { codes_[r * cols_ + c] = v; }
  FieldElement operator()(std::size_t r, std::size_t c) const { return field_.element(code(r, c)); }
  void set(std::size_t r, std::size_t c, const FieldElement& v);
  std::span<const std::uint64_t> codes() const { return codes_; }

  Vector apply(const Vector& x) const;
  LinearMap transpose() const;

  friend LinearMap operator*(const LinearMap& a, const LinearMap& b);
  friend bool operator==(const LinearMap& a, const LinearMap& b);

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint64_t> codes_;
};

/// sum over index tuples of T[i_1..i_d] * prod_j x_j[i_j].
FieldElement evaluate(const Tensor& t, std::span<const Vector> xs);

/// Coefficients of the linear functional obtained by fixing every leg except
/// `pivot`. `fixed` lists vectors for the other legs in increasing leg order.
Vector slice_form(const Tensor& t, std::size_t pivot, std::span<const Vector> fixed);

/// S(y_1..y_d) = T(A_1 y_1, ..., A_d y_d).
Tensor restrict(const Tensor& t, std::span<const LinearMap> maps);

/// Same coefficients read over an extension `k` of t.field().
Tensor base_change(const Tensor& t, const Field& k);

/// Unit tensor <r> of order d.
Tensor diagonal(std::size_t r, std::size_t d, const Field& field);

/// Block-diagonal direct sum.
Tensor direct_sum(const Tensor& t, const Tensor& s);

/// Contracts leg `leg` against `x` (codes), returning an order-(d-1) array
/// as a flat code vector with the remaining dims. Used by the counting loops.
std::vector<std::uint64_t> contract_leg(const Field& field, std::span<const std::uint64_t> codes,
                                        std::span<const std::size_t> dims, std::size_t leg,
                                        std::span<const std::uint64_t> x);

/// Matrix rank by Gaussian elimination (row-major rows x cols codes).
std::size_t matrix_rank(const Field& field, std::vector<std::uint64_t> codes, std::size_t rows,
                        std::size_t cols);
std::size_t matrix_rank(const LinearMap& m);

/// Matrix rank of the flattening leg `leg` vs the rest.
std::size_t flattening_rank(const Tensor& t, std::size_t leg);
/// Maximum flattening rank over all legs: a lower bound on tensor rank.
std::size_t flattening_bound(const Tensor& t);

}  // namespace arstab
