#include "arstab/tensor.hpp"

#include <algorithm>
#include <numeric>

namespace arstab {

namespace {

std::vector<std::size_t> make_strides(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> strides(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) strides[i - 1] = strides[i] * dims[i];
  return strides;
}

std::size_t product(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

void require_field(const Field& expected, const FieldElement& x) {
  if (!(x.field() == expected)) throw Error(ErrorKind::MixedFields, x.field().name() + " vs " + expected.name());
}

std::vector<std::uint64_t> to_codes(const Field& field, const Vector& v) {
  std::vector<std::uint64_t> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    require_field(field, x);
    out.push_back(x.code());
  }
  return out;
}

}  // namespace

// --- Tensor ----------------------------------------------------------------

Tensor::Tensor(Field field, std::vector<std::size_t> dims)
    : field_(std::move(field)), dims_(std::move(dims)) {
  if (dims_.size() < 2) throw Error(ErrorKind::DimensionMismatch, "tensor order must be >= 2");
  strides_ = make_strides(dims_);
  codes_.assign(product(dims_), 0);
}

Tensor::Tensor(Field field, std::vector<std::size_t> dims, std::vector<std::uint64_t> codes)
    : Tensor(std::move(field), std::move(dims)) {
  if (codes.size() != codes_.size()) throw Error(ErrorKind::DimensionMismatch, "coefficient count mismatch");
  for (auto c : codes) {
    if (c >= field_.order()) throw Error(ErrorKind::ParseError, "coefficient code out of range");
  }
  codes_ = std::move(codes);
}

std::size_t Tensor::flat_index(std::span<const std::size_t> index) const {
  if (index.size() != dims_.size()) throw Error(ErrorKind::DimensionMismatch, "index arity");
  std::size_t flat = 0;
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (index[i] >= dims_[i]) throw Error(ErrorKind::DimensionMismatch, "index out of range");
    flat += index[i] * strides_[i];
  }
  return flat;
}

FieldElement Tensor::operator()(std::span<const std::size_t> index) const {
  return field_.element(codes_[flat_index(index)]);
}

FieldElement Tensor::at(std::initializer_list<std::size_t> index) const {
  return (*this)(std::span<const std::size_t>(index.begin(), index.size()));
}

void Tensor::set(std::span<const std::size_t> index, const FieldElement& value) {
  require_field(field_, value);
  codes_[flat_index(index)] = value.code();
}

void Tensor::set(std::initializer_list<std::size_t> index, const FieldElement& value) {
  set(std::span<const std::size_t>(index.begin(), index.size()), value);
}

bool Tensor::is_zero() const {
  return std::all_of(codes_.begin(), codes_.end(), [](auto c) { return c == 0; });
}

bool operator==(const Tensor& a, const Tensor& b) {
  return a.field_ == b.field_ && a.dims_ == b.dims_ && a.codes_ == b.codes_;
}

// --- LinearMap -------------------------------------------------------------

LinearMap::LinearMap(Field field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), codes_(rows * cols, 0) {}

LinearMap::LinearMap(Field field, std::size_t rows, std::size_t cols, std::vector<std::uint64_t> codes)
    : field_(std::move(field)), rows_(rows), cols_(cols), codes_(std::move(codes)) {
  if (codes_.size() != rows_ * cols_) throw Error(ErrorKind::DimensionMismatch, "matrix entry count");
  for (auto c : codes_) {
    if (c >= field_.order()) throw Error(ErrorKind::ParseError, "matrix entry out of range");
  }
}

LinearMap LinearMap::identity(Field field, std::size_t n) {
  LinearMap m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m.set_code(i, i, 1);
  return m;
}

void LinearMap::set(std::size_t r, std::size_t c, const FieldElement& v) {
  require_field(field_, v);
  set_code(r, c, v.code());
}

Vector LinearMap::apply(const Vector& x) const {
  if (x.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "vector length vs matrix cols");
  const auto xc = to_codes(field_, x);
  Vector out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) acc = field_.add(acc, field_.mul(code(r, c), xc[c]));
    out.push_back(field_.element(acc));
  }
  return out;
}

LinearMap LinearMap::transpose() const {
  LinearMap t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.set_code(c, r, code(r, c));
  return t;
}

LinearMap operator*(const LinearMap& a, const LinearMap& b) {
  if (!(a.field_ == b.field_)) throw Error(ErrorKind::MixedFields, "matrix product over different fields");
  if (a.cols_ != b.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product shapes");
  const Field& f = a.field_;
  LinearMap out(f, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const auto aik = a.code(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        out.set_code(i, j, f.add(out.code(i, j), f.mul(aik, b.code(k, j))));
    }
  return out;
}

bool operator==(const LinearMap& a, const LinearMap& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.codes_ == b.codes_;
}

// --- operations ------------------------------------------------------------

std::vector<std::uint64_t> contract_leg(const Field& field, std::span<const std::uint64_t> codes,
                                        std::span<const std::size_t> dims, std::size_t leg,
                                        std::span<const std::uint64_t> x) {
  const std::size_t n = dims[leg];
  const std::size_t outer = product(dims.subspan(0, leg));
  const std::size_t inner = product(dims.subspan(leg + 1));
  std::vector<std::uint64_t> out(outer * inner, 0);
  for (std::size_t o = 0; o < outer; ++o) {
    const std::size_t base = o * n * inner;
    std::uint64_t* dst = out.data() + o * inner;
    for (std::size_t k = 0; k < n; ++k) {
      const std::uint64_t xk = x[k];
      if (xk == 0) continue;
      const std::uint64_t* src = codes.data() + base + k * inner;
      if (xk == 1) {
        for (std::size_t i = 0; i < inner; ++i) dst[i] = field.add(dst[i], src[i]);
      } else {
        for (std::size_t i = 0; i < inner; ++i) dst[i] = field.add(dst[i], field.mul(src[i], xk));
      }
    }
  }
  return out;
}

FieldElement evaluate(const Tensor& t, std::span<const Vector> xs) {
  if (xs.size() != t.order()) throw Error(ErrorKind::DimensionMismatch, "need one vector per leg");
  for (std::size_t j = 0; j < xs.size(); ++j) {
    if (xs[j].size() != t.dim(j)) throw Error(ErrorKind::DimensionMismatch, "vector length vs leg dimension");
  }
  std::vector<std::uint64_t> cur(t.codes().begin(), t.codes().end());
  std::vector<std::size_t> dims = t.dims();
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const auto x = to_codes(t.field(), xs[j]);
    cur = contract_leg(t.field(), cur, dims, 0, x);
    dims.erase(dims.begin());
  }
  return t.field().element(cur.empty() ? 0 : cur[0]);
}

Vector slice_form(const Tensor& t, std::size_t pivot, std::span<const Vector> fixed) {
  if (pivot >= t.order()) throw Error(ErrorKind::DimensionMismatch, "pivot leg out of range");
  if (fixed.size() + 1 != t.order()) throw Error(ErrorKind::DimensionMismatch, "need vectors for all other legs");
  std::vector<std::uint64_t> cur(t.codes().begin(), t.codes().end());
  std::vector<std::size_t> dims = t.dims();
  // Contract from the highest leg down so lower leg positions stay valid.
  for (std::size_t leg = t.order(); leg-- > 0;) {
    if (leg == pivot) continue;
    const Vector& v = fixed[leg < pivot ? leg : leg - 1];
    if (v.size() != t.dim(leg)) throw Error(ErrorKind::DimensionMismatch, "vector length vs leg dimension");
    const auto x = to_codes(t.field(), v);
    cur = contract_leg(t.field(), cur, dims, leg, x);
    dims.erase(dims.begin() + static_cast<std::ptrdiff_t>(leg));
  }
  Vector out;
  out.reserve(t.dim(pivot));
  for (std::size_t i = 0; i < t.dim(pivot); ++i) out.push_back(t.field().element(cur[i]));
  return out;
}

Tensor restrict(const Tensor& t, std::span<const LinearMap> maps) {
  if (maps.size() != t.order()) throw Error(ErrorKind::DimensionMismatch, "need one map per leg");
  const Field& f = t.field();
  std::vector<std::uint64_t> cur(t.codes().begin(), t.codes().end());
  std::vector<std::size_t> dims = t.dims();
  for (std::size_t leg = 0; leg < maps.size(); ++leg) {
    const LinearMap& a = maps[leg];
    if (!(a.field() == f)) throw Error(ErrorKind::MixedFields, "map field differs from tensor field");
    if (a.rows() != dims[leg]) throw Error(ErrorKind::DimensionMismatch, "map rows vs leg dimension");
    const std::size_t outer = product(std::span<const std::size_t>(dims).subspan(0, leg));
    const std::size_t inner = product(std::span<const std::size_t>(dims).subspan(leg + 1));
    const std::size_t n = dims[leg], m = a.cols();
    std::vector<std::uint64_t> next(outer * m * inner, 0);
    for (std::size_t o = 0; o < outer; ++o)
      for (std::size_t r = 0; r < n; ++r) {
        const std::uint64_t* src = cur.data() + (o * n + r) * inner;
        for (std::size_t c = 0; c < m; ++c) {
          const std::uint64_t arc = a.code(r, c);
          if (arc == 0) continue;
          std::uint64_t* dst = next.data() + (o * m + c) * inner;
          for (std::size_t i = 0; i < inner; ++i) dst[i] = f.add(dst[i], f.mul(src[i], arc));
        }
      }
    cur = std::move(next);
    dims[leg] = m;
  }
  return Tensor(f, dims, std::move(cur));
}

Tensor base_change(const Tensor& t, const Field& k) {
  if (!k.contains(t.field())) throw Error(ErrorKind::NotInTower, t.field().name() + " not below " + k.name());
  return Tensor(k, t.dims(), std::vector<std::uint64_t>(t.codes().begin(), t.codes().end()));
}

Tensor diagonal(std::size_t r, std::size_t d, const Field& field) {
  Tensor t(field, std::vector<std::size_t>(d, r));
  std::size_t diag_stride = 0;
  for (auto s : t.strides()) diag_stride += s;
  for (std::size_t i = 0; i < r; ++i) t.codes()[i * diag_stride] = 1;
  return t;
}

Tensor direct_sum(const Tensor& t, const Tensor& s) {
  if (!(t.field() == s.field())) throw Error(ErrorKind::MixedFields, "direct sum over different fields");
  if (t.order() != s.order()) throw Error(ErrorKind::OrderMismatch, "direct sum of different orders");
  const std::size_t d = t.order();
  std::vector<std::size_t> dims(d);
  for (std::size_t j = 0; j < d; ++j) dims[j] = t.dim(j) + s.dim(j);
  Tensor out(t.field(), dims);
  std::vector<std::size_t> idx(d);
  auto copy_block = [&](const Tensor& src, bool shifted) {
    for (std::size_t flat = 0; flat < src.size(); ++flat) {
      std::size_t rem = flat;
      for (std::size_t j = 0; j < d; ++j) {
        idx[j] = rem / src.strides()[j] + (shifted ? t.dim(j) : 0);
        rem %= src.strides()[j];
      }
      out.codes()[out.flat_index(idx)] = src.codes()[flat];
    }
  };
  copy_block(t, false);
  copy_block(s, true);
  return out;
}

std::size_t matrix_rank(const Field& f, std::vector<std::uint64_t> a, std::size_t rows, std::size_t cols) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot * cols + col] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank)
      for (std::size_t c = 0; c < cols; ++c) std::swap(a[pivot * cols + c], a[rank * cols + c]);
    const std::uint64_t inv = f.inv(a[rank * cols + col]);
    for (std::size_t c = col; c < cols; ++c) a[rank * cols + c] = f.mul(a[rank * cols + c], inv);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const std::uint64_t factor = a[r * cols + col];
      if (factor == 0) continue;
      for (std::size_t c = col; c < cols; ++c)
        a[r * cols + c] = f.sub(a[r * cols + c], f.mul(factor, a[rank * cols + c]));
    }
    ++rank;
  }
  return rank;
}

std::size_t matrix_rank(const LinearMap& m) {
  return matrix_rank(m.field(), std::vector<std::uint64_t>(m.codes().begin(), m.codes().end()), m.rows(),
                     m.cols());
}

std::size_t flattening_rank(const Tensor& t, std::size_t leg) {
  const std::size_t n = t.dim(leg);
  if (n == 0 || t.size() == 0) return 0;
  const std::size_t rest = t.size() / n;
  const std::size_t outer = product(std::span<const std::size_t>(t.dims()).subspan(0, leg));
  const std::size_t inner = t.strides()[leg];
  std::vector<std::uint64_t> m(n * rest);
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < inner; ++i) m[k * rest + o * inner + i] = t.codes()[(o * n + k) * inner + i];
  return matrix_rank(t.field(), std::move(m), n, rest);
}

std::size_t flattening_bound(const Tensor& t) {
  std::size_t best = 0;
  for (std::size_t leg = 0; leg < t.order(); ++leg) best = std::max(best, flattening_rank(t, leg));
  return best;
}

}  // namespace arstab
