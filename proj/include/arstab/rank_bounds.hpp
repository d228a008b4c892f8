#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>

#include "arstab/certificates.hpp"

namespace arstab {

// --- Genus-zero evaluation/interpolation --------------------------------------
//
// Places of degree one of the rational function field over F_q are the q
// points of F_q plus ∞. A polynomial of degree <= D is determined by its
// values at D + 1 of them, where the value "at ∞" is the coefficient of t^D.
// Points are taken in code order 0, 1, 2, ... with ∞ last, only when needed.

/// (d-1)(n-1)+1 term decomposition of Mult_d(F_{q^n}/F_q). Throws
/// NotEnoughPoints when that exceeds q + 1.
RankDecomposition chudnovsky_rank(unsigned d, unsigned n, const Field& base);

/// <N> <= Mult_d(F_{q^n}/F_q) for (d-1)(N-1) < n and N <= q+1.
RestrictionCertificate chudnovsky_subrank(unsigned d, unsigned n, const Field& base, std::size_t N);

/// Largest N accepted by chudnovsky_subrank for (d, n, q).
std::size_t max_chudnovsky_subrank(unsigned d, unsigned n, std::uint64_t q);

/// n^{d-1} term expansion over the basis.
RankDecomposition schoolbook_rank(unsigned d, unsigned n, const Field& base);

/// outer: Mult_d(E/B) over B, inner: Mult_d(B/F) over F. Result: Mult_d(E/F)
/// over F with outer.rank() * inner.rank() terms.
RankDecomposition compose_rank(const RankDecomposition& outer, const RankDecomposition& inner);

/// outer: <N_o> <= Mult_d(E/B), inner: <N_i> <= Mult_d(B/F). Result:
/// <N_o N_i> <= Mult_d(E/F).
RestrictionCertificate compose_subrank(const RestrictionCertificate& outer, const RestrictionCertificate& inner);

/// Smallest certified rank decomposition reachable from chudnovsky, any
/// factorization through compose_rank, or schoolbook.
RankDecomposition best_rank_certificate(unsigned d, unsigned n, const Field& base);

// --- Brute-force oracles -----------------------------------------------------

struct BruteForceRank {
  /// nullopt means the rank exceeds r_max.
  std::optional<std::size_t> rank;
  std::size_t r_max;
};

BruteForceRank brute_force_rank(const Tensor& t, std::size_t r_max);

struct BruteForceSubrank {
  std::size_t subrank = 0;
  /// Restriction maps realizing <subrank> <= t (empty when subrank is 0).
  std::vector<LinearMap> witness;
};

BruteForceSubrank brute_force_subrank(const Tensor& t, std::size_t r_max);

// --- Places and function-field conditions -------------------------------------

using BigInt = boost::multiprecision::cpp_int;

int mobius(std::uint64_t n);
/// Degree-n places of F_q(x): q + 1 for n = 1, else the number of monic
/// irreducible polynomials of degree n.
BigInt count_places_rational(std::uint64_t q, unsigned n);

enum class DegreePlace { KnownPresent, ByHighDegreeLemma, Unknown };
enum class Provenance { Rational, Tower, User };

std::string_view to_string(DegreePlace p);
std::string_view to_string(Provenance p);

/// 2g + 1 <= l^n - l^{n-1}, the sufficient condition for a degree-n place
/// over F_{l^2}. Exact for any n.
bool high_degree_place_condition(std::int64_t genus, std::uint64_t l, std::uint64_t n);

/// Worst-case data about a function field K/F_q.
struct FunctionFieldProfile {
  std::int64_t genus_bound = 0;
  std::int64_t n1_lower = 0;
  std::uint64_t q = 0;
  /// l with q = l^2 when the constant field is declared a square.
  std::optional<std::uint64_t> sqrt_q;
  bool all_degrees_present = false;
  std::vector<unsigned> known_degrees;
  Provenance provenance = Provenance::User;
  std::uint64_t tower_l = 0;
  unsigned tower_i = 0;

  DegreePlace degree_place(unsigned n) const;

  static FunctionFieldProfile rational(std::uint64_t q);
  /// Claimed profile of K_{l,i} over F_{l^2}: genus < l^i, N_1 >= l^i (l - 1).
  static FunctionFieldProfile tower(std::uint64_t l, unsigned i);
  static FunctionFieldProfile user(std::int64_t genus_bound, std::int64_t n1_lower, std::uint64_t q,
                                   std::optional<std::uint64_t> sqrt_q = std::nullopt,
                                   std::vector<unsigned> known_degrees = {});
  std::string id() const;
};

enum class BoundDirection { Rank, Subrank };

struct FFConditionReport {
  bool a = false;  // N_1 >= g + 1
  bool b = false;  // rank: (d-1)(n+g-1) < N, subrank: (d-1)(N+g-1) < n
  bool c = false;  // N_1 >= N
  bool d = false;  // N_n >= 1
  DegreePlace d_basis = DegreePlace::Unknown;

  bool all() const { return a && b && c && d; }
};

FFConditionReport check_ff_conditions(const FunctionFieldProfile& profile, BoundDirection direction, unsigned d,
                                      unsigned n, std::int64_t N);

}  // namespace arstab
