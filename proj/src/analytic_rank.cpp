#include "arstab/analytic_rank.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <numbers>
#include <numeric>

#include "arstab/checked.hpp"

namespace arstab {

namespace {

constexpr double kCharacterGuard = 1e7;

// Reorders legs so that new leg i is old leg perm[i].
std::pair<std::vector<std::uint64_t>, std::vector<std::size_t>> permute_legs(const Tensor& t,
                                                                           const std::vector<std::size_t>& perm) {
  const std::size_t d = t.order();
  std::vector<std::size_t> dims(d);
  for (std::size_t i = 0; i < d; ++i) dims[i] = t.dim(perm[i]);
  std::vector<std::uint64_t> out(t.size());
  std::vector<std::size_t> idx(d, 0);
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    std::size_t src = 0;
    for (std::size_t i = 0; i < d; ++i) src += idx[i] * t.strides()[perm[i]];
    out[flat] = t.codes()[src];
    for (std::size_t i = d; i-- > 0;) {
      if (++idx[i] < dims[i]) break;
      idx[i] = 0;
    }
  }
  return {std::move(out), std::move(dims)};
}

// Calls visit(x) for every vector x in F^n (codes).
template <class Visit>
void for_each_vector(std::uint64_t q, std::size_t n, Visit&& visit) {
  std::vector<std::uint64_t> x(n, 0);
  for (;;) {
    visit(std::span<const std::uint64_t>(x));
    std::size_t i = 0;
    while (i < n && ++x[i] == q) x[i++] = 0;
    if (i == n) break;
  }
}

struct SliceCounter {
  const Field& field;
  std::uint64_t q;
  std::uint64_t count = 0;

  // `dims` = (enumerated legs..., pivot, last).
  void run(const std::vector<std::uint64_t>& codes, const std::vector<std::size_t>& dims) {
    if (dims.size() == 2) {
      const std::size_t r = matrix_rank(field, codes, dims[0], dims[1]);
      count += checked_pow(q, static_cast<std::uint64_t>(dims[1] - r));
      return;
    }
    const std::vector<std::size_t> rest(dims.begin() + 1, dims.end());
    for_each_vector(q, dims[0], [&](std::span<const std::uint64_t> x) {
      run(contract_leg(field, codes, dims, 0, x), rest);
    });
  }
};

}  // namespace

std::uint64_t ExactBias::denominator() const { return checked_pow(q, static_cast<std::uint64_t>(exponent)); }

double ExactBias::value() const {
  return static_cast<double>(static_cast<long double>(count) / static_cast<long double>(denominator()));
}

ExactBias bias(const Tensor& t, std::size_t pivot) {
  const std::size_t d = t.order();
  if (pivot >= d) throw Error(ErrorKind::DimensionMismatch, "pivot leg out of range");
  const std::uint64_t q = t.field().order();
  std::size_t exponent = 0;
  for (std::size_t j = 0; j < d; ++j)
    if (j != pivot) exponent += t.dim(j);
  const double work = std::pow(static_cast<double>(q), static_cast<double>(exponent)) *
                      static_cast<double>(std::max<std::size_t>(t.dim(pivot), 1));
  if (work > kWorkGuard) throw Error(ErrorKind::SizeGuard, "bias enumeration exceeds guard");

  ExactBias out;
  out.q = q;
  out.exponent = static_cast<unsigned>(exponent);
  if (t.size() == 0) {
    out.count = out.denominator();
    return out;
  }
  // Enumerate every other leg except the last non-pivot one, which is
  // handled by the kernel of the remaining pivot x last matrix.
  std::vector<std::size_t> perm;
  for (std::size_t j = 0; j < d; ++j)
    if (j != pivot) perm.push_back(j);
  const std::size_t last = perm.back();
  perm.pop_back();
  perm.push_back(pivot);
  perm.push_back(last);
  auto [codes, dims] = permute_legs(t, perm);
  SliceCounter counter{t.field(), q};
  counter.run(codes, dims);
  out.count = counter.count;
  return out;
}

ExactBias bias(const Tensor& t) {
  const std::size_t max_dim = *std::max_element(t.dims().begin(), t.dims().end());
  std::optional<ExactBias> result;
  for (std::size_t j = 0; j < t.order(); ++j) {
    if (t.dim(j) != max_dim) continue;
    ExactBias b = bias(t, j);
    if (!result) {
      result = b;
    } else if (!(b == *result)) {
      throw Error(ErrorKind::CertificateInvalid, "bias depends on pivot leg");
    }
  }
  return *result;
}

ARValue analytic_rank_from_bias(const ExactBias& b) {
  ARValue ar;
  ar.exact = b;
  const long double lg = std::log(static_cast<long double>(b.count)) / std::log(static_cast<long double>(b.q));
  ar.value = static_cast<double>(static_cast<long double>(b.exponent) - lg);
  // Exact powers of q give exact integers.
  if (b.count > 0) {
    std::uint64_t c = b.count;
    unsigned e = 0;
    while (c % b.q == 0) {
      c /= b.q;
      ++e;
    }
    if (c == 1) ar.value = static_cast<double>(b.exponent) - e;
  }
  return ar;
}

ARValue analytic_rank(const Tensor& t) { return analytic_rank_from_bias(bias(t)); }

double bias_via_characters(const Tensor& t) {
  const Field& f = t.field();
  const std::uint64_t q = f.order();
  std::size_t total_dim = 0;
  for (auto n : t.dims()) total_dim += n;
  const double inputs = std::pow(static_cast<double>(q), static_cast<double>(total_dim));
  if (inputs > kCharacterGuard) throw Error(ErrorKind::SizeGuard, "character sum exceeds guard");
  if (t.size() == 0) return 1.0;

  const std::uint64_t p = f.characteristic();
  const Field prime = f.level(0);
  std::vector<std::uint64_t> trace(q);
  for (std::uint64_t v = 0; v < q; ++v) trace[v] = relative_trace(f.element(v), prime).code();

  std::vector<std::uint64_t> histogram(p, 0);
  auto rec = [&](auto&& self, const std::vector<std::uint64_t>& codes, const std::vector<std::size_t>& dims) -> void {
    if (dims.empty()) {
      ++histogram[trace[codes[0]]];
      return;
    }
    const std::vector<std::size_t> rest(dims.begin() + 1, dims.end());
    for_each_vector(q, dims[0], [&](std::span<const std::uint64_t> x) {
      auto next = contract_leg(f, codes, dims, 0, x);
      if (rest.empty()) {
        ++histogram[trace[next[0]]];
      } else {
        self(self, next, rest);
      }
    });
  };
  rec(rec, std::vector<std::uint64_t>(t.codes().begin(), t.codes().end()), t.dims());

  long double re = 0, im = 0, n = 0;
  for (std::uint64_t v = 0; v < p; ++v) {
    const long double angle = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(v) / p;
    re += histogram[v] * std::cos(angle);
    im += histogram[v] * std::sin(angle);
    n += histogram[v];
  }
  re /= n;
  im /= n;
  if (std::fabs(im) >= 1e-9L) throw Error(ErrorKind::CertificateInvalid, "character sum has imaginary part");
  return static_cast<double>(re);
}

}  // namespace arstab
