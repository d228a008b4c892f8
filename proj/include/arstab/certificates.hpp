#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "arstab/mult.hpp"
#include "arstab/tensor.hpp"

namespace arstab {

/// The unit tensor <size> of the given order.
struct DiagonalSpec {
  std::size_t size;
  std::size_t order;
  Field field;
};

/// What a certificate talks about: a multiplication tensor, a unit tensor,
/// or an explicit tensor.
using TensorSpec = std::variant<MultSpec, DiagonalSpec, Tensor>;

Tensor materialize(const TensorSpec& spec);
Field spec_field(const TensorSpec& spec);
std::string spec_id(const TensorSpec& spec);

/// One rank-one term: a coordinate vector per leg.
struct RankOneTerm {
  std::vector<Vector> legs;
};

/// Certifies R(target) <= terms.size().
struct RankDecomposition {
  TensorSpec target;
  std::vector<RankOneTerm> terms;

  std::size_t rank() const { return terms.size(); }
};

/// Certifies target <= source via restrict(source, maps) == target.
struct RestrictionCertificate {
  TensorSpec source;
  TensorSpec target;
  std::vector<LinearMap> maps;
};

/// Sum of the outer products of the terms. Throws DimensionMismatch on shape
/// errors.
Tensor sum_of_terms(const Field& field, const std::vector<std::size_t>& dims, const std::vector<RankOneTerm>& terms);

bool verify_decomposition(const Tensor& t, const RankDecomposition& d);
bool verify_decomposition(const RankDecomposition& d);
bool verify_restriction(const RestrictionCertificate& c);

/// Mult_d(F_{q^m}/F_q) <= Mult_d(F_{q^n}/F_q) with maps (f, ..., f, g^T),
/// checked exactly. Throws HypothesisViolated unless n - 1 >= (d - 1)(m - 1).
RestrictionCertificate verify_qmon(std::uint64_t q, unsigned m, unsigned n, unsigned d);

}  // namespace arstab
