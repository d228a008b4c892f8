#include "arstab/certificates.hpp"

#include <sstream>

namespace arstab {

Tensor materialize(const TensorSpec& spec) {
  return std::visit(
      [](const auto& s) -> Tensor {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, MultSpec>) {
          return mult_tensor(s);
        } else if constexpr (std::is_same_v<S, DiagonalSpec>) {
          return diagonal(s.size, s.order, s.field);
        } else {
          return s;
        }
      },
      spec);
}

Field spec_field(const TensorSpec& spec) {
  return std::visit(
      [](const auto& s) -> Field {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, MultSpec>) {
          return s.base;
        } else if constexpr (std::is_same_v<S, DiagonalSpec>) {
          return s.field;
        } else {
          return s.field();
        }
      },
      spec);
}

std::string spec_id(const TensorSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::string {
        using S = std::decay_t<decltype(s)>;
        std::ostringstream os;
        if constexpr (std::is_same_v<S, MultSpec>) {
          return s.id();
        } else if constexpr (std::is_same_v<S, DiagonalSpec>) {
          os << "unit(r=" << s.size << ",d=" << s.order << ",q=" << s.field.order() << ")";
        } else {
          os << "tensor(q=" << s.field().order() << ",dims=";
          for (std::size_t i = 0; i < s.order(); ++i) os << (i ? "x" : "") << s.dim(i);
          os << ")";
        }
        return os.str();
      },
      spec);
}

Tensor sum_of_terms(const Field& field, const std::vector<std::size_t>& dims, const std::vector<RankOneTerm>& terms) {
  Tensor acc(field, dims);
  for (const auto& term : terms) {
    if (term.legs.size() != dims.size()) throw Error(ErrorKind::DimensionMismatch, "term has wrong number of legs");
    std::vector<std::uint64_t> outer{1};
    for (std::size_t j = 0; j < dims.size(); ++j) {
      const Vector& v = term.legs[j];
      if (v.size() != dims[j]) throw Error(ErrorKind::DimensionMismatch, "term vector length vs leg dimension");
      std::vector<std::uint64_t> next;
      next.reserve(outer.size() * v.size());
      for (auto a : outer) {
        for (const auto& x : v) {
          if (!(x.field() == field)) throw Error(ErrorKind::MixedFields, "term entry not over the tensor field");
          next.push_back(field.mul(a, x.code()));
        }
      }
      outer = std::move(next);
    }
    auto codes = acc.codes();
    for (std::size_t i = 0; i < outer.size(); ++i) codes[i] = field.add(codes[i], outer[i]);
  }
  return acc;
}

bool verify_decomposition(const Tensor& t, const RankDecomposition& d) {
  return sum_of_terms(t.field(), t.dims(), d.terms) == t;
}

bool verify_decomposition(const RankDecomposition& d) { return verify_decomposition(materialize(d.target), d); }

bool verify_restriction(const RestrictionCertificate& c) {
  const Tensor source = materialize(c.source);
  const Tensor target = materialize(c.target);
  return restrict(source, c.maps) == target;
}

RestrictionCertificate verify_qmon(std::uint64_t q, unsigned m, unsigned n, unsigned d) {
  const QmonMaps qm = qmon_maps(q, m, n, d);
  RestrictionCertificate c{MultSpec{qm.base, qm.large, d}, MultSpec{qm.base, qm.small, d}, {}};
  for (unsigned k = 0; k + 1 < d; ++k) c.maps.push_back(qm.f);
  c.maps.push_back(qm.g.transpose());
  if (!verify_restriction(c)) throw Error(ErrorKind::CertificateInvalid, "qmon restriction fails");
  return c;
}

}  // namespace arstab
