#include <doctest.h>

#include <cmath>

#include "arstab/analytic_rank.hpp"
#include "arstab/mult.hpp"
#include "oracles.hpp"

using namespace arstab;

namespace {

Tensor mult34() {
  const Field f2 = Field::prime(2);
  return mult_tensor(MultSpec{f2, extend(f2, 2), 3});
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

TEST_CASE("zero and identity tensors") {
  for (std::uint64_t q : {2, 3, 4, 5}) {
    const Field f = field_of_order(q);
    const ExactBias z = bias(Tensor(f, {2, 3, 2}));
    CHECK(z.count == ipow(q, z.exponent));
    CHECK(analytic_rank(Tensor(f, {3, 3})).value == 0.0);
    for (unsigned n = 1; n <= 5; ++n) {
      const ARValue ar = analytic_rank(diagonal(n, 2, f));
      CHECK(ar.exact.count == 1);
      CHECK(ar.exact.exponent == n);
      CHECK(ar.value == doctest::Approx(n).epsilon(1e-12));
    }
  }
}

TEST_CASE("Mult_3(F_4/F_2) has bias 7/16") {
  const Tensor t = mult34();
  const ExactBias b = bias(t);
  CHECK(b.count == 7);
  CHECK(b.exponent == 4);
  CHECK(b.q == 2);
  CHECK(analytic_rank(t).value == doctest::Approx(4.0 - std::log2(7.0)).epsilon(1e-12));
  CHECK(oracle::zero_slice_count(t, 0) == 7);
  CHECK(std::fabs(bias_via_characters(t) - 0.4375) < 1e-9);
}

TEST_CASE("character-sum oracle") {
  const Field f2 = Field::prime(2);
  CHECK(bias_via_characters(Tensor(f2, {2, 2, 2})) == doctest::Approx(1.0));
  CHECK(std::fabs(bias_via_characters(diagonal(2, 2, f2)) - 0.25) < 1e-9);

  std::mt19937_64 rng(31);
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9}) {
    const Field f = field_of_order(q);
    for (int k = 0; k < 5; ++k) {
      const Tensor t = oracle::random_tensor(f, {2, 2, 2}, rng);
      CHECK(std::fabs(bias_via_characters(t) - bias(t).value()) < 1e-9);
    }
  }
  CHECK_THROWS_AS(bias_via_characters(Tensor(f2, {10, 10, 10})), Error);
}

TEST_CASE("every pivot leg gives the same count") {
  std::mt19937_64 rng(8);
  const std::vector<std::vector<std::size_t>> formats{{2, 2, 2}, {3, 3, 3}, {2, 3, 3}, {1, 2, 3}, {3, 1, 2},
                                                       {2, 2, 2, 2}, {3, 2}, {2, 3}};
  for (std::uint64_t q : {2, 3}) {
    const Field f = Field::prime(q);
    for (const auto& dims : formats) {
      for (int k = 0; k < 4; ++k) {
        const Tensor t = oracle::random_tensor(f, dims, rng);
        const ExactBias ref = bias(t, 0);
        CHECK(ref.count == oracle::zero_slice_count(t, 0));
        for (std::size_t leg = 1; leg < dims.size(); ++leg) {
          const ExactBias b = bias(t, leg);
          // Same rational value regardless of the pivot.
          CHECK(b.count * ipow(q, ref.exponent) == ref.count * ipow(q, b.exponent));
        }
      }
    }
  }
}

TEST_CASE("matrices: analytic rank equals rank") {
  std::mt19937_64 rng(2024);
  for (std::uint64_t q : {2, 3, 4}) {
    const Field f = field_of_order(q);
    for (int k = 0; k < 70; ++k) {
      const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
      const Tensor t = oracle::random_tensor(f, {r, c}, rng);
      const ARValue ar = analytic_rank(t);
      const std::size_t rank = oracle::kernel_rank(f, {t.codes().begin(), t.codes().end()}, r, c);
      CHECK(ar.value == static_cast<double>(rank));
    }
  }
}

TEST_CASE("matrices keep their analytic rank over extensions") {
  std::mt19937_64 rng(99);
  const Field f2 = Field::prime(2);
  const Field f16 = extend(f2, 4);
  for (int k = 0; k < 20; ++k) {
    const Tensor t = oracle::random_tensor(f2, {4, 4}, rng);
    CHECK(analytic_rank(base_change(t, f16)).value == analytic_rank(t).value);
  }
}

TEST_CASE("bias is multiplicative under direct sums") {
  std::mt19937_64 rng(77);
  for (std::uint64_t q : {2, 3}) {
    const Field f = Field::prime(q);
    for (int k = 0; k < 10; ++k) {
      const Tensor t = oracle::random_tensor(f, {2, 1, 2}, rng);
      const Tensor s = oracle::random_tensor(f, {1, 2, 2}, rng);
      const ExactBias bt = bias(t), bs = bias(s), bts = bias(direct_sum(t, s));
      CHECK(bts.count * ipow(q, bt.exponent + bs.exponent) == bt.count * bs.count * ipow(q, bts.exponent));
    }
  }
  for (int k = 0; k < 10; ++k) {
    const Tensor t = oracle::random_tensor(Field::prime(2), {2, 2, 2}, rng);
    CHECK(analytic_rank(direct_sum(t, t)).value == doctest::Approx(2 * analytic_rank(t).value).epsilon(1e-12));
  }
}

TEST_CASE("restriction does not increase analytic rank") {
  std::mt19937_64 rng(5);
  const Field f3 = Field::prime(3);
  for (int k = 0; k < 20; ++k) {
    const Tensor t = oracle::random_tensor(f3, {2, 3, 2}, rng);
    std::vector<LinearMap> maps;
    for (auto n : t.dims()) {
      LinearMap m(f3, n, 2);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < 2; ++c) m.set_code(r, c, rng() % 3);
      maps.push_back(m);
    }
    CHECK(analytic_rank(restrict(t, maps)).value <= analytic_rank(t).value + 1e-12);
  }
}

TEST_CASE("degenerate formats and guards") {
  const Field f2 = Field::prime(2);
  const ARValue empty = analytic_rank(Tensor(f2, {0, 3, 2}));
  CHECK(empty.value == 0.0);
  CHECK(empty.exact.count == empty.exact.denominator());
  CHECK_THROWS_AS(bias(Tensor(f2, {20, 20, 20})), Error);
}
