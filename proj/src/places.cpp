#include <sstream>

#include "arstab/checked.hpp"
#include "arstab/rank_bounds.hpp"

namespace arstab {

int mobius(std::uint64_t n) {
  int result = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

BigInt count_places_rational(std::uint64_t q, unsigned n) {
  if (n == 0) throw Error(ErrorKind::HypothesisViolated, "place degree must be >= 1");
  if (n == 1) return BigInt(q) + 1;
  BigInt sum = 0;
  for (unsigned m = 1; m <= n; ++m) {
    if (n % m != 0) continue;
    const int mu = mobius(m);
    if (mu == 0) continue;
    BigInt term = boost::multiprecision::pow(BigInt(q), n / m);
    sum += mu > 0 ? term : BigInt(-term);
  }
  return sum / n;
}

std::string_view to_string(DegreePlace p) {
  switch (p) {
    case DegreePlace::KnownPresent: return "known-present";
    case DegreePlace::ByHighDegreeLemma: return "known-by-high-degree-lemma";
    case DegreePlace::Unknown: return "unknown";
  }
  return "unknown";
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Rational: return "rational";
    case Provenance::Tower: return "tower";
    case Provenance::User: return "user";
  }
  return "user";
}

bool high_degree_place_condition(std::int64_t genus, std::uint64_t l, std::uint64_t n) {
  if (n == 0 || l < 2 || genus < 0) return false;
  const std::uint64_t lhs = 2 * static_cast<std::uint64_t>(genus) + 1;
  // l^n - l^{n-1} = l^{n-1} (l - 1); saturate just above lhs.
  const std::uint64_t cap = lhs + 1;
  const std::uint64_t pow = saturating_pow(l, n - 1, cap);
  if (pow >= cap) return true;
  return static_cast<unsigned __int128>(lhs) <= static_cast<unsigned __int128>(pow) * (l - 1);
}

DegreePlace FunctionFieldProfile::degree_place(unsigned n) const {
  if (all_degrees_present) return DegreePlace::KnownPresent;
  for (auto k : known_degrees)
    if (k == n) return DegreePlace::KnownPresent;
  if (sqrt_q && n1_lower >= 1 && high_degree_place_condition(genus_bound, *sqrt_q, n)) {
    return DegreePlace::ByHighDegreeLemma;
  }
  return DegreePlace::Unknown;
}

FunctionFieldProfile FunctionFieldProfile::rational(std::uint64_t q) {
  FunctionFieldProfile p;
  p.genus_bound = 0;
  p.n1_lower = checked_add(static_cast<std::int64_t>(q), 1);
  p.q = q;
  // F_q(x) has monic irreducibles of every degree.
  p.all_degrees_present = true;
  p.provenance = Provenance::Rational;
  return p;
}

FunctionFieldProfile FunctionFieldProfile::tower(std::uint64_t l, unsigned i) {
  FunctionFieldProfile p;
  const std::int64_t li = checked_pow(static_cast<std::int64_t>(l), i);
  p.genus_bound = li - 1;
  p.n1_lower = checked_mul(li, static_cast<std::int64_t>(l) - 1);
  p.q = checked_mul(l, l);
  p.sqrt_q = l;
  p.provenance = Provenance::Tower;
  p.tower_l = l;
  p.tower_i = i;
  return p;
}

FunctionFieldProfile FunctionFieldProfile::user(std::int64_t genus_bound, std::int64_t n1_lower, std::uint64_t q,
                                                std::optional<std::uint64_t> sqrt_q,
                                                std::vector<unsigned> known_degrees) {
  if (genus_bound < 0 || n1_lower < 0) throw Error(ErrorKind::HypothesisViolated, "profile bounds must be >= 0");
  FunctionFieldProfile p;
  p.genus_bound = genus_bound;
  p.n1_lower = n1_lower;
  p.q = q;
  if (sqrt_q && checked_mul(*sqrt_q, *sqrt_q) != q) throw Error(ErrorKind::HypothesisViolated, "sqrt_q^2 != q");
  p.sqrt_q = sqrt_q;
  p.known_degrees = std::move(known_degrees);
  p.provenance = Provenance::User;
  return p;
}

std::string FunctionFieldProfile::id() const {
  std::ostringstream os;
  switch (provenance) {
    case Provenance::Rational: os << "rational(q=" << q << ")"; break;
    case Provenance::Tower: os << "tower(l=" << tower_l << ",i=" << tower_i << ")"; break;
    case Provenance::User: os << "user(g<=" << genus_bound << ",N1>=" << n1_lower << ",q=" << q << ")"; break;
  }
  return os.str();
}

FFConditionReport check_ff_conditions(const FunctionFieldProfile& profile, BoundDirection direction, unsigned d,
                                      unsigned n, std::int64_t N) {
  FFConditionReport r;
  const std::int64_t g = profile.genus_bound;
  r.a = profile.n1_lower >= checked_add(g, 1);
  const std::int64_t k = static_cast<std::int64_t>(d) - 1;
  if (direction == BoundDirection::Rank) {
    r.b = checked_mul(k, checked_add(static_cast<std::int64_t>(n), g - 1)) < N;
  } else {
    r.b = checked_mul(k, checked_add(N, g - 1)) < static_cast<std::int64_t>(n);
  }
  r.c = profile.n1_lower >= N;
  r.d_basis = profile.degree_place(n);
  r.d = r.d_basis != DegreePlace::Unknown;
  return r;
}

}  // namespace arstab
