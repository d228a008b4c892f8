#include <algorithm>

#include "arstab/rank_bounds.hpp"

namespace arstab {

namespace {

const MultSpec& mult_target(const TensorSpec& spec, const char* what) {
  const auto* m = std::get_if<MultSpec>(&spec);
  if (!m) throw Error(ErrorKind::TowerMismatch, std::string(what) + " is not a multiplication tensor");
  return *m;
}

const DiagonalSpec& unit_target(const TensorSpec& spec, const char* what) {
  const auto* u = std::get_if<DiagonalSpec>(&spec);
  if (!u) throw Error(ErrorKind::TowerMismatch, std::string(what) + " is not a unit tensor");
  return *u;
}

// Checks outer = Mult_d(E/B), inner = Mult_d(B/F) and returns Mult_d(E/F).
MultSpec composed_spec(const MultSpec& outer, const MultSpec& inner) {
  if (!(outer.base == inner.top)) {
    throw Error(ErrorKind::TowerMismatch, "outer base " + outer.base.name() + " != inner top " + inner.top.name());
  }
  if (outer.arity != inner.arity) throw Error(ErrorKind::TowerMismatch, "arity differs");
  return MultSpec{inner.base, outer.top, outer.arity};
}

std::vector<std::uint64_t> codes_of(const Vector& v) {
  std::vector<std::uint64_t> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.code());
  return out;
}

Vector as_vector(const Field& f, const std::vector<std::uint64_t>& codes) {
  Vector v;
  v.reserve(codes.size());
  for (auto c : codes) v.push_back(f.element(c));
  return v;
}

std::uint64_t dot(const Field& f, std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc = f.add(acc, f.mul(a[i], b[i]));
  return acc;
}

}  // namespace

RankDecomposition compose_rank(const RankDecomposition& outer, const RankDecomposition& inner) {
  const MultSpec& o = mult_target(outer.target, "outer target");
  const MultSpec& in = mult_target(inner.target, "inner target");
  const MultSpec spec = composed_spec(o, in);
  const Field& F = spec.base;
  const Field& B = o.base;
  const Field& E = o.top;
  const unsigned n = o.extension_degree();
  const unsigned m = in.extension_degree();
  const std::uint64_t s = F.order();

  // F-basis element of B with a single nonzero coordinate l.
  std::vector<std::uint64_t> beta(m);
  for (unsigned l = 0; l < m; ++l) beta[l] = l == 0 ? 1 : beta[l - 1] * s;

  RankDecomposition out{spec, {}};
  for (const auto& ot : outer.terms) {
    // Output element W_t of E.
    const auto w_codes = codes_of(ot.legs.back());
    const FieldElement w = from_coordinates(E, B, w_codes);
    for (const auto& it : inner.terms) {
      RankOneTerm term;
      for (std::size_t k = 0; k + 1 < ot.legs.size(); ++k) {
        // x -> psi(<u, X>): evaluated on each F-basis element e_{i*m+l} of E.
        const auto u = codes_of(ot.legs[k]);
        const auto v = codes_of(it.legs[k]);
        std::vector<std::uint64_t> functional(static_cast<std::size_t>(n) * m);
        for (unsigned i = 0; i < n; ++i)
          for (unsigned l = 0; l < m; ++l) {
            const FieldElement a = B.element(B.mul(u[i], beta[l]));
            functional[i * m + l] = dot(F, v, coordinates(a, F));
          }
        term.legs.push_back(as_vector(F, functional));
      }
      const FieldElement zeta = embed(from_coordinates(B, F, codes_of(it.legs.back())), E);
      term.legs.push_back(as_vector(F, coordinates(zeta * w, F)));
      out.terms.push_back(std::move(term));
    }
  }
  return out;
}

RestrictionCertificate compose_subrank(const RestrictionCertificate& outer, const RestrictionCertificate& inner) {
  const MultSpec& o = mult_target(outer.source, "outer source");
  const MultSpec& in = mult_target(inner.source, "inner source");
  const DiagonalSpec& ou = unit_target(outer.target, "outer target");
  const DiagonalSpec& iu = unit_target(inner.target, "inner target");
  const MultSpec spec = composed_spec(o, in);
  const Field& F = spec.base;
  const Field& B = o.base;
  const unsigned n = o.extension_degree();
  const unsigned m = in.extension_degree();
  const std::size_t No = ou.size, Ni = iu.size;
  const std::size_t d = spec.arity;
  if (outer.maps.size() != d || inner.maps.size() != d) {
    throw Error(ErrorKind::DimensionMismatch, "certificate needs one map per leg");
  }
  const std::uint64_t s = F.order();
  std::vector<std::uint64_t> beta(m);
  for (unsigned l = 0; l < m; ++l) beta[l] = l == 0 ? 1 : beta[l - 1] * s;

  RestrictionCertificate out{spec, DiagonalSpec{No * Ni, d, F}, {}};
  const std::size_t rows = static_cast<std::size_t>(n) * m;
  for (std::size_t k = 0; k + 1 < d; ++k) {
    const LinearMap& A = outer.maps[k];
    const LinearMap& Bk = inner.maps[k];
    LinearMap C(F, rows, No * Ni);
    for (std::size_t i = 0; i < No; ++i)
      for (std::size_t ip = 0; ip < Ni; ++ip) {
        std::vector<std::uint64_t> col(m);
        for (unsigned l = 0; l < m; ++l) col[l] = Bk.code(l, ip);
        const std::uint64_t a = from_coordinates(B, F, col).code();
        for (unsigned j = 0; j < n; ++j) {
          const auto c = coordinates(B.element(B.mul(A.code(j, i), a)), F);
          for (unsigned l = 0; l < m; ++l) C.set_code(j * m + l, i * Ni + ip, c[l]);
        }
      }
    out.maps.push_back(std::move(C));
  }
  {
    const LinearMap& A = outer.maps[d - 1];
    const LinearMap& Bd = inner.maps[d - 1];
    LinearMap C(F, rows, No * Ni);
    for (std::size_t i = 0; i < No; ++i)
      for (std::size_t ip = 0; ip < Ni; ++ip)
        for (unsigned j = 0; j < n; ++j)
          for (unsigned l = 0; l < m; ++l) {
            const auto c = coordinates(B.element(B.mul(A.code(j, i), beta[l])), F);
            std::uint64_t acc = 0;
            for (unsigned lp = 0; lp < m; ++lp) acc = F.add(acc, F.mul(Bd.code(lp, ip), c[lp]));
            C.set_code(j * m + l, i * Ni + ip, acc);
          }
    out.maps.push_back(std::move(C));
  }
  return out;
}

RankDecomposition best_rank_certificate(unsigned d, unsigned n, const Field& base) {
  const std::uint64_t q = base.order();
  std::optional<RankDecomposition> best;
  auto consider = [&](RankDecomposition cand) {
    if (!best || cand.rank() < best->rank()) best = std::move(cand);
  };
  if (static_cast<std::uint64_t>(d - 1) * (n - 1) + 1 <= q + 1) consider(chudnovsky_rank(d, n, base));
  for (unsigned m = 2; m < n; ++m) {
    if (n % m != 0) continue;
    RankDecomposition inner = best_rank_certificate(d, m, base);
    const Field mid = std::get<MultSpec>(inner.target).top;
    consider(compose_rank(best_rank_certificate(d, n / m, mid), inner));
  }
  consider(schoolbook_rank(d, n, base));
  return std::move(*best);
}

}  // namespace arstab
