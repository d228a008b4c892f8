#include <sstream>

#include "arstab/rank_bounds.hpp"

namespace arstab {

namespace {

using Poly = std::vector<std::uint64_t>;

// (t - a) * p over `f`.
Poly times_linear(const Field& f, const Poly& p, std::uint64_t a) {
  Poly out(p.size() + 1, 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[i + 1] = f.add(out[i + 1], p[i]);
    out[i] = f.sub(out[i], f.mul(a, p[i]));
  }
  return out;
}

Poly vanishing(const Field& f, const std::vector<std::uint64_t>& points) {
  Poly w{1};
  for (auto a : points) w = times_linear(f, w, a);
  return w;
}

// Lagrange basis polynomial for points[k] on `points`.
Poly lagrange(const Field& f, const std::vector<std::uint64_t>& points, std::size_t k) {
  Poly l{1};
  std::uint64_t denom = 1;
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (j == k) continue;
    l = times_linear(f, l, points[j]);
    denom = f.mul(denom, f.sub(points[k], points[j]));
  }
  const std::uint64_t inv = f.inv(denom);
  for (auto& c : l) c = f.mul(c, inv);
  return l;
}

// Evaluates a polynomial over `base` at x in `top` and returns base coordinates.
std::vector<std::uint64_t> eval_coords(const Field& top, const Field& base, const Poly& p, std::uint64_t x) {
  std::uint64_t acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = top.add(top.mul(acc, x), p[i]);
  return coordinates(top.element(acc), base);
}

Vector as_vector(const Field& f, const std::vector<std::uint64_t>& codes) {
  Vector v;
  v.reserve(codes.size());
  for (auto c : codes) v.push_back(f.element(c));
  return v;
}

std::vector<std::uint64_t> power_row(const Field& f, std::uint64_t a, std::size_t len) {
  std::vector<std::uint64_t> row(len);
  std::uint64_t x = 1;
  for (std::size_t i = 0; i < len; ++i) {
    row[i] = x;
    x = f.mul(x, a);
  }
  return row;
}

struct PointSet {
  std::vector<std::uint64_t> finite;
  bool infinity = false;
};

PointSet choose_points(std::uint64_t q, std::size_t count) {
  PointSet ps;
  const std::size_t finite = std::min<std::uint64_t>(count, q);
  for (std::size_t i = 0; i < finite; ++i) ps.finite.push_back(i);
  ps.infinity = count > q;
  return ps;
}

}  // namespace

RankDecomposition chudnovsky_rank(unsigned d, unsigned n, const Field& base) {
  if (d < 2 || n < 1) throw Error(ErrorKind::HypothesisViolated, "need d >= 2 and n >= 1");
  const std::uint64_t q = base.order();
  const std::size_t r = static_cast<std::size_t>(d - 1) * (n - 1) + 1;
  if (r > q + 1) {
    std::ostringstream os;
    os << "(d-1)(n-1)+1 = " << r << " > q+1 = " << q + 1;
    throw Error(ErrorKind::NotEnoughPoints, os.str());
  }
  const Field top = extend(base, n);
  const std::uint64_t alpha = n == 1 ? 0 : generator(top).code();
  const PointSet pts = choose_points(q, r);

  RankDecomposition dec{MultSpec{base, top, d}, {}};
  for (std::size_t k = 0; k < pts.finite.size(); ++k) {
    RankOneTerm term;
    const Vector ev = as_vector(base, power_row(base, pts.finite[k], n));
    for (unsigned j = 0; j + 1 < d; ++j) term.legs.push_back(ev);
    term.legs.push_back(as_vector(base, eval_coords(top, base, lagrange(base, pts.finite, k), alpha)));
    dec.terms.push_back(std::move(term));
  }
  if (pts.infinity) {
    // Top coefficient of the product polynomial, times the monic vanishing
    // polynomial of the finite points.
    RankOneTerm term;
    std::vector<std::uint64_t> top_coeff(n, 0);
    top_coeff[n - 1] = 1;
    const Vector ev = as_vector(base, top_coeff);
    for (unsigned j = 0; j + 1 < d; ++j) term.legs.push_back(ev);
    term.legs.push_back(as_vector(base, eval_coords(top, base, vanishing(base, pts.finite), alpha)));
    dec.terms.push_back(std::move(term));
  }
  return dec;
}

std::size_t max_chudnovsky_subrank(unsigned d, unsigned n, std::uint64_t q) {
  // (d-1)(N-1) < n  <=>  N - 1 <= (n-1)/(d-1)
  const std::size_t by_degree = static_cast<std::size_t>((n - 1) / (d - 1)) + 1;
  return std::min<std::uint64_t>(by_degree, q + 1);
}

RestrictionCertificate chudnovsky_subrank(unsigned d, unsigned n, const Field& base, std::size_t N) {
  if (d < 2 || n < 1) throw Error(ErrorKind::HypothesisViolated, "need d >= 2 and n >= 1");
  const std::uint64_t q = base.order();
  const std::size_t product_degree = static_cast<std::size_t>(d - 1) * (N == 0 ? 0 : N - 1);
  if (N == 0 || product_degree >= n) {
    std::ostringstream os;
    os << "(d-1)(N-1) = " << product_degree << " must be < n = " << n << " with N >= 1";
    throw Error(ErrorKind::HypothesisViolated, os.str());
  }
  if (N > q + 1) throw Error(ErrorKind::NotEnoughPoints, "N exceeds q + 1 degree-one places");
  const Field top = extend(base, n);
  const PointSet pts = choose_points(q, N);

  // Input legs: slot values -> coefficients of the interpolating polynomial
  // of degree <= N-1.
  LinearMap in(base, n, N);
  for (std::size_t k = 0; k < pts.finite.size(); ++k) {
    const Poly l = lagrange(base, pts.finite, k);
    for (std::size_t i = 0; i < l.size(); ++i) in.set_code(i, k, l[i]);
  }
  if (pts.infinity) {
    const Poly w = vanishing(base, pts.finite);
    for (std::size_t i = 0; i < w.size(); ++i) in.set_code(i, N - 1, w[i]);
  }
  // Output leg: evaluation of the (unreduced) product at each slot.
  LinearMap out(base, n, N);
  for (std::size_t k = 0; k < pts.finite.size(); ++k) {
    const auto row = power_row(base, pts.finite[k], n);
    for (std::size_t i = 0; i < n; ++i) out.set_code(i, k, row[i]);
  }
  if (pts.infinity) out.set_code(product_degree, N - 1, 1);

  RestrictionCertificate cert{MultSpec{base, top, d}, DiagonalSpec{N, d, base}, {}};
  for (unsigned j = 0; j + 1 < d; ++j) cert.maps.push_back(in);
  cert.maps.push_back(out);
  return cert;
}

RankDecomposition schoolbook_rank(unsigned d, unsigned n, const Field& base) {
  if (d < 2 || n < 1) throw Error(ErrorKind::HypothesisViolated, "need d >= 2 and n >= 1");
  const Field top = extend(base, n);
  const unsigned k = d - 1;
  RankDecomposition dec{MultSpec{base, top, d}, {}};
  std::vector<unsigned> idx(k, 0);
  std::vector<std::uint64_t> basis(n);
  for (unsigned i = 0; i < n; ++i) basis[i] = i == 0 ? 1 : basis[i - 1] * base.order();
  for (;;) {
    RankOneTerm term;
    std::uint64_t prod = 1;
    for (auto i : idx) {
      std::vector<std::uint64_t> e(n, 0);
      e[i] = 1;
      term.legs.push_back(as_vector(base, e));
      prod = top.mul(prod, basis[i]);
    }
    term.legs.push_back(as_vector(base, coordinates(top.element(prod), base)));
    dec.terms.push_back(std::move(term));
    std::size_t pos = k;
    while (pos > 0 && ++idx[pos - 1] == n) idx[--pos] = 0;
    if (pos == 0) break;
  }
  return dec;
}

}  // namespace arstab
