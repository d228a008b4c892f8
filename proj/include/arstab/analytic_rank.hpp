#pragma once

#include <cstdint>

#include "arstab/tensor.hpp"

namespace arstab {

/// bias(T) = count / q^exponent, kept exactly.
struct ExactBias {
  std::uint64_t count = 1;
  unsigned exponent = 0;
  std::uint64_t q = 2;

  std::uint64_t denominator() const;
  double value() const;
  friend bool operator==(const ExactBias&, const ExactBias&) = default;
};

struct ARValue {
  ExactBias exact;
  /// exponent - log_q(count).
  double value = 0.0;
};

/// Bias via slice-kernel counting with the first leg of maximal dimension as
/// pivot. Every other maximal leg is also counted and must agree.
ExactBias bias(const Tensor& t);
/// Bias with an explicit pivot leg.
ExactBias bias(const Tensor& t, std::size_t pivot);

ARValue analytic_rank(const Tensor& t);
/// log_q of an exact bias turned into an analytic rank.
ARValue analytic_rank_from_bias(const ExactBias& b);

/// Independent oracle: mean of exp(2πi Tr(T(x))/p) over every input.
double bias_via_characters(const Tensor& t);

}  // namespace arstab
