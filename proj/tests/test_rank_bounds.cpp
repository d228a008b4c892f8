#include <doctest.h>

#include "arstab/certificates.hpp"
#include "arstab/rank_bounds.hpp"
#include "oracles.hpp"

using namespace arstab;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::ConfigError;
}

std::size_t ipow(std::size_t b, unsigned e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

TEST_CASE("chudnovsky_rank examples") {
  const Field f2 = Field::prime(2);
  const RankDecomposition r = chudnovsky_rank(3, 2, f2);
  CHECK(r.rank() == 3);
  CHECK(verify_decomposition(r));
  for (std::uint64_t q : {2, 3, 5}) {
    for (unsigned n = 1; n <= q + 1; ++n) {
      const RankDecomposition id = chudnovsky_rank(2, n, field_of_order(q));
      CHECK(id.rank() == n);
      CHECK(verify_decomposition(id));
    }
  }
  CHECK(kind_of([&] { chudnovsky_rank(3, 3, f2); }) == ErrorKind::NotEnoughPoints);
  CHECK(kind_of([&] { chudnovsky_rank(2, 4, f2); }) == ErrorKind::NotEnoughPoints);
  CHECK(best_rank_certificate(2, 4, f2).rank() == 4);
}

TEST_CASE("chudnovsky_rank grid") {
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9}) {
    const Field f = field_of_order(q);
    for (unsigned d = 2; d <= 4; ++d) {
      for (unsigned n = 1; n <= 4; ++n) {
        CAPTURE(q);
        CAPTURE(d);
        CAPTURE(n);
        const std::size_t r = (d - 1) * (n - 1) + 1;
        if (r > q + 1) {
          CHECK(kind_of([&] { chudnovsky_rank(d, n, f); }) == ErrorKind::NotEnoughPoints);
          continue;
        }
        const RankDecomposition dec = chudnovsky_rank(d, n, f);
        CHECK(dec.rank() == r);
        CHECK(verify_decomposition(dec));
        if (n >= 2) CHECK(r <= ipow(n, d - 1));
        CHECK(flattening_bound(materialize(dec.target)) <= dec.rank());
      }
    }
  }
}

TEST_CASE("corrupted decompositions are rejected") {
  RankDecomposition r = chudnovsky_rank(3, 2, Field::prime(2));
  r.terms[0].legs[2][0] = r.terms[0].legs[2][0] + Field::prime(2).one();
  CHECK(!verify_decomposition(r));
  r.terms.pop_back();
  CHECK(!verify_decomposition(r));
}

TEST_CASE("chudnovsky_subrank") {
  const Field f4 = field_of_order(4);
  const RestrictionCertificate c = chudnovsky_subrank(3, 5, f4, 3);
  CHECK(verify_restriction(c));
  CHECK(std::get<DiagonalSpec>(c.target).size == 3);
  for (std::uint64_t q : {2, 3, 4}) {
    for (unsigned n = 1; n <= 4; ++n) {
      CHECK(verify_restriction(chudnovsky_subrank(3, n, field_of_order(q), 1)));
    }
  }
  CHECK(kind_of([] { chudnovsky_subrank(3, 2, Field::prime(2), 2); }) == ErrorKind::HypothesisViolated);
  CHECK(kind_of([] { chudnovsky_subrank(2, 9, Field::prime(2), 4); }) == ErrorKind::NotEnoughPoints);

  for (std::uint64_t q : {2, 3, 4, 5}) {
    const Field f = field_of_order(q);
    for (unsigned d = 2; d <= 4; ++d) {
      for (unsigned n = 1; n <= 5; ++n) {
        const std::size_t N = max_chudnovsky_subrank(d, n, q);
        CAPTURE(q);
        CAPTURE(d);
        CAPTURE(n);
        CHECK(N >= 1);
        CHECK(N <= q + 1);
        CHECK((d - 1) * (N - 1) < n);
        CHECK(verify_restriction(chudnovsky_subrank(d, n, f, N)));
        if (N < q + 1) CHECK(kind_of([&] { chudnovsky_subrank(d, n, f, N + 1); }) == ErrorKind::HypothesisViolated);
      }
    }
  }
}

TEST_CASE("schoolbook_rank") {
  const Field f2 = Field::prime(2);
  CHECK(schoolbook_rank(2, 3, f2).rank() == 3);
  const RankDecomposition a = schoolbook_rank(3, 2, f2);
  CHECK(a.rank() == 4);
  CHECK(verify_decomposition(a));
  const RankDecomposition b = schoolbook_rank(3, 3, f2);
  CHECK(b.rank() == 9);
  CHECK(verify_decomposition(b));
  CHECK(verify_decomposition(schoolbook_rank(4, 2, Field::prime(3))));
}

TEST_CASE("compose_rank") {
  const Field f2 = Field::prime(2);
  const Field f4 = extend(f2, 2);
  const RankDecomposition outer = chudnovsky_rank(3, 2, f4);
  const RankDecomposition inner = chudnovsky_rank(3, 2, f2);
  const RankDecomposition c = compose_rank(outer, inner);
  CHECK(c.rank() == 9);
  CHECK(verify_decomposition(c));
  const auto& spec = std::get<MultSpec>(c.target);
  CHECK(spec.top.order() == 16);
  CHECK(spec.base == f2);

  // Trivial inner (m = 1) and trivial outer (n = 1).
  const RankDecomposition trivial_inner = chudnovsky_rank(3, 1, f4);
  CHECK(compose_rank(outer, chudnovsky_rank(3, 1, f4)).rank() == outer.rank());
  CHECK(compose_rank(chudnovsky_rank(3, 1, f4), inner).rank() == inner.rank());
  CHECK(trivial_inner.rank() == 1);

  CHECK(kind_of([&] { compose_rank(outer, chudnovsky_rank(3, 2, Field::prime(3))); }) == ErrorKind::TowerMismatch);

  const RankDecomposition s = compose_rank(chudnovsky_rank(2, 2, field_of_order(9)), schoolbook_rank(2, 2, Field::prime(3)));
  CHECK(s.rank() == 4);
  CHECK(verify_decomposition(s));
}

TEST_CASE("compose_subrank") {
  const Field f2 = Field::prime(2);
  const Field f4 = extend(f2, 2);
  const RestrictionCertificate outer = chudnovsky_subrank(3, 3, f4, 2);
  const RestrictionCertificate inner = chudnovsky_subrank(3, 2, f2, 1);
  const RestrictionCertificate c = compose_subrank(outer, inner);
  CHECK(std::get<DiagonalSpec>(c.target).size == 2);
  CHECK(std::get<MultSpec>(c.source).top.order() == 64);
  CHECK(verify_restriction(c));

  const RestrictionCertificate ones = compose_subrank(chudnovsky_subrank(3, 2, f4, 1), inner);
  CHECK(std::get<DiagonalSpec>(ones.target).size == 1);
  CHECK(verify_restriction(ones));

  const RestrictionCertificate two = compose_subrank(chudnovsky_subrank(2, 2, f4, 2), chudnovsky_subrank(2, 2, f2, 2));
  CHECK(std::get<DiagonalSpec>(two.target).size == 4);
  CHECK(verify_restriction(two));

  CHECK(kind_of([&] { compose_subrank(outer, chudnovsky_subrank(3, 2, Field::prime(3), 1)); }) ==
        ErrorKind::TowerMismatch);
}

TEST_CASE("best_rank_certificate") {
  for (std::uint64_t q : {2, 3, 4}) {
    for (unsigned d = 2; d <= 3; ++d) {
      for (unsigned n = 1; n <= 4; ++n) {
        const RankDecomposition b = best_rank_certificate(d, n, field_of_order(q));
        CHECK(verify_decomposition(b));
        CHECK(b.rank() <= ipow(n, d - 1));
      }
    }
  }
  CHECK(best_rank_certificate(3, 4, Field::prime(2)).rank() == 9);
}

TEST_CASE("brute_force_rank") {
  const Field f2 = Field::prime(2);
  CHECK(brute_force_rank(diagonal(2, 3, f2), 3).rank == 2);
  CHECK(brute_force_rank(Tensor(f2, {2, 2, 2}), 3).rank == 0);
  const Tensor m = mult_tensor(MultSpec{f2, extend(f2, 2), 3});
  CHECK(brute_force_rank(m, 3).rank == 3);
  CHECK(!brute_force_rank(m, 2).rank.has_value());
  // Agrees with the best certified upper bound.
  CHECK(brute_force_rank(m, 4).rank == best_rank_certificate(3, 2, f2).rank());
  CHECK(brute_force_rank(mult_tensor(MultSpec{Field::prime(3), field_of_order(9), 2}), 3).rank == 2);
  CHECK(kind_of([&] { brute_force_rank(mult_tensor(MultSpec{f2, extend(f2, 4), 3}), 8); }) == ErrorKind::SizeGuard);
}

TEST_CASE("brute_force_subrank") {
  const Field f2 = Field::prime(2);
  const BruteForceSubrank u = brute_force_subrank(diagonal(2, 3, f2), 2);
  CHECK(u.subrank == 2);
  CHECK(verify_restriction(RestrictionCertificate{diagonal(2, 3, f2), DiagonalSpec{2, 3, f2}, u.witness}));
  CHECK(brute_force_subrank(Tensor(f2, {2, 2, 2}), 2).subrank == 0);
  const BruteForceSubrank m = brute_force_subrank(mult_tensor(MultSpec{f2, extend(f2, 2), 3}), 2);
  CHECK(m.subrank == 1);
  CHECK(m.subrank >= max_chudnovsky_subrank(3, 2, 2));
}

TEST_CASE("count_places_rational") {
  CHECK(count_places_rational(2, 1) == 3);
  CHECK(count_places_rational(2, 2) == 1);
  CHECK(count_places_rational(3, 3) == 8);
  CHECK(mobius(1) == 1);
  CHECK(mobius(6) == 1);
  CHECK(mobius(12) == 0);
  CHECK(mobius(30) == -1);
  for (std::uint64_t q : {2, 3, 4}) {
    const Field f = field_of_order(q);
    for (unsigned n = 2; n <= 6; ++n) {
      CAPTURE(q);
      CAPTURE(n);
      CHECK(count_places_rational(q, n) == oracle::count_irreducible(f, n));
    }
  }
  CHECK(count_places_rational(2, 200) > BigInt(1) << 190);
}

TEST_CASE("check_ff_conditions") {
  const FFConditionReport r = check_ff_conditions(FunctionFieldProfile::rational(2), BoundDirection::Rank, 3, 2, 3);
  CHECK(r.a);
  CHECK(r.b);
  CHECK(r.c);
  CHECK(r.d);
  CHECK(r.all());

  const FunctionFieldProfile t = FunctionFieldProfile::tower(2, 1);
  CHECK(t.genus_bound == 1);
  CHECK(t.n1_lower == 2);
  CHECK(t.degree_place(3) == DegreePlace::ByHighDegreeLemma);
  CHECK(high_degree_place_condition(1, 2, 3));
  CHECK(!high_degree_place_condition(2, 2, 3));
  CHECK(high_degree_place_condition(1000, 2, 1000000));

  const FFConditionReport s = check_ff_conditions(FunctionFieldProfile::rational(4), BoundDirection::Subrank, 3, 4, 3);
  CHECK(!s.b);
  CHECK(!s.all());

  const FunctionFieldProfile u = FunctionFieldProfile::user(3, 10, 7);
  const FFConditionReport unknown = check_ff_conditions(u, BoundDirection::Rank, 2, 3, 6);
  CHECK(unknown.d_basis == DegreePlace::Unknown);
  CHECK(!unknown.d);
  CHECK(check_ff_conditions(FunctionFieldProfile::user(3, 10, 7, std::nullopt, {3}), BoundDirection::Rank, 2, 3, 6).d);
}
