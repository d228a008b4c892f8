#include "arstab/mult.hpp"

#include <cmath>
#include <sstream>

namespace arstab {

void MultSpec::validate() const {
  if (arity < 2) throw Error(ErrorKind::DimensionMismatch, "multiplication tensor needs d >= 2");
  if (!top.contains(base)) throw Error(ErrorKind::NotInTower, base.name() + " not below " + top.name());
}

std::string MultSpec::id() const {
  std::ostringstream os;
  os << "mult(d=" << arity << ",q=" << base.order() << ",n=" << extension_degree() << ",top=" << top.name() << ")";
  return os.str();
}

std::vector<std::uint64_t> coordinates(const FieldElement& x, const Field& base) {
  if (!x.field().contains(base)) throw Error(ErrorKind::NotInTower, base.name() + " not below " + x.field().name());
  const unsigned n = x.field().absolute_degree() / base.absolute_degree();
  const std::uint64_t s = base.order();
  std::vector<std::uint64_t> out(n);
  std::uint64_t code = x.code();
  for (unsigned i = 0; i < n; ++i) {
    out[i] = code % s;
    code /= s;
  }
  return out;
}

FieldElement from_coordinates(const Field& top, const Field& base, std::span<const std::uint64_t> coords) {
  if (!top.contains(base)) throw Error(ErrorKind::NotInTower, base.name() + " not below " + top.name());
  const unsigned n = top.absolute_degree() / base.absolute_degree();
  if (coords.size() != n) throw Error(ErrorKind::DimensionMismatch, "coordinate vector length");
  const std::uint64_t s = base.order();
  std::uint64_t code = 0;
  for (std::size_t i = coords.size(); i-- > 0;) {
    if (coords[i] >= s) throw Error(ErrorKind::ParseError, "coordinate out of range");
    code = code * s + coords[i];
  }
  return top.element(code);
}

Tensor mult_tensor(const MultSpec& spec) {
  spec.validate();
  const unsigned n = spec.extension_degree();
  const unsigned k = spec.arity - 1;
  if (std::pow(static_cast<double>(n), spec.arity) > kWorkGuard) {
    throw Error(ErrorKind::SizeGuard, "multiplication tensor too large");
  }
  const Field& top = spec.top;
  const std::uint64_t s = spec.base.order();
  std::vector<std::uint64_t> basis(n);
  for (unsigned i = 0; i < n; ++i) basis[i] = i == 0 ? 1 : basis[i - 1] * s;

  Tensor t(spec.base, std::vector<std::size_t>(spec.arity, n));
  std::vector<unsigned> idx(k, 0);
  std::size_t flat = 0;
  for (;;) {
    std::uint64_t prod = 1;
    for (auto i : idx) prod = top.mul(prod, basis[i]);
    for (unsigned j = 0; j < n; ++j) {
      t.codes()[flat++] = prod % s;
      prod /= s;
    }
    std::size_t pos = k;
    while (pos > 0 && ++idx[pos - 1] == n) idx[--pos] = 0;
    if (pos == 0) break;
  }
  return t;
}

QmonMaps qmon_maps(std::uint64_t q, unsigned m, unsigned n, unsigned d) {
  if (d < 2 || m < 1 || n < 1) throw Error(ErrorKind::HypothesisViolated, "need d >= 2, m >= 1, n >= 1");
  if (static_cast<long long>(n) - 1 < static_cast<long long>(d - 1) * (m - 1)) {
    std::ostringstream os;
    os << "n - 1 = " << n - 1 << " < (d - 1)(m - 1) = " << (d - 1) * (m - 1);
    throw Error(ErrorKind::HypothesisViolated, os.str());
  }
  const Field base = field_of_order(q);
  const Field small = extend(base, m);
  const Field large = extend(base, n);

  LinearMap f(base, n, m);
  for (unsigned i = 0; i < m; ++i) f.set_code(i, i, 1);

  // Column i of g holds the coordinates of α^i.
  LinearMap g(base, m, n);
  const FieldElement alpha = m == 1 ? small.one() : generator(small);
  FieldElement power = small.one();
  for (unsigned i = 0; i < n; ++i) {
    const auto c = coordinates(power, base);
    for (unsigned r = 0; r < m; ++r) g.set_code(r, i, c[r]);
    power *= alpha;
  }
  if (!(g * f == LinearMap::identity(base, m))) {
    throw Error(ErrorKind::CertificateInvalid, "g o f is not the identity");
  }
  return QmonMaps{std::move(f), std::move(g), small, large, base};
}

}  // namespace arstab
