#include "arstab/verifier.hpp"

#include <cmath>
#include <numeric>

#include "arstab/checked.hpp"

namespace arstab {

namespace {

std::int64_t narrow(__int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw Error(ErrorKind::SizeGuard, "rational overflow");
  }
  return static_cast<std::int64_t>(v);
}

Rational make_rational(__int128 num, __int128 den) {
  if (den == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 a = num < 0 ? -num : num, b = den;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  return Rational(narrow(num), narrow(den));
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorKind::HypothesisViolated, what);
}

bool in_closed(std::int64_t v, std::int64_t lo, std::int64_t hi) { return lo <= v && v <= hi; }
// Exact comparisons of a rational against an integer, without normalising.
bool rat_le_int(const Rational& r, std::int64_t v) {
  return static_cast<__int128>(r.num()) <= static_cast<__int128>(v) * r.den();
}
bool int_le_rat(std::int64_t v, const Rational& r) {
  return static_cast<__int128>(v) * r.den() <= static_cast<__int128>(r.num());
}

bool in_closed(std::int64_t v, const Rational& lo, const Rational& hi) { return rat_le_int(lo, v) && int_le_rat(v, hi); }

// Fills the interval/witness part shared by both propositions.
void place_witness(PropWitness& w) {
  const IntervalFact fact = check_interval_fact(w.first_lo, w.first_hi, w.second_lo, w.second_hi);
  w.fact_hypotheses = fact.hypotheses_hold();
  if (fact.witness) {
    w.N = *fact.witness;
    w.in_intervals = in_closed(w.N, w.first_lo, w.first_hi) && in_closed(w.N, w.second_lo, w.second_hi);
  }
}

}  // namespace

// --- Rational -----------------------------------------------------------------

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
  if (den == 1) return;
  if (den == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator");
  if (den < 0) {
    num_ = narrow(-static_cast<__int128>(num));
    den_ = narrow(-static_cast<__int128>(den));
  }
  const std::int64_t g = std::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

std::int64_t Rational::floor() const { return floor_div(num_, den_); }
std::int64_t Rational::ceil() const { return ceil_div(num_, den_); }

std::string Rational::str() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  return make_rational(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                       static_cast<__int128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return make_rational(static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
                       static_cast<__int128>(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return make_rational(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const __int128 l = static_cast<__int128>(a.num_) * b.den_;
  const __int128 r = static_cast<__int128>(b.num_) * a.den_;
  return l <=> r;
}

// --- interval fact ------------------------------------------------------------

IntervalFact check_interval_fact(std::int64_t a, std::int64_t b, const Rational& x, const Rational& y) {
  IntervalFact out;
  if (!(a <= b)) {
    out.failed_hypothesis = "a <= b";
  } else if (!int_le_rat(a, y)) {
    out.failed_hypothesis = "a <= y";
  } else if (!rat_le_int(x, b)) {
    out.failed_hypothesis = "x <= b";
  } else if (!(static_cast<__int128>(y.num()) * x.den() - static_cast<__int128>(x.num()) * y.den() >=
               static_cast<__int128>(x.den()) * y.den())) {
    out.failed_hypothesis = "y - x >= 1";
  }
  const std::int64_t lo = std::max(a, x.ceil());
  const std::int64_t hi = std::min(b, y.floor());
  if (lo <= hi) out.witness = lo;
  return out;
}

// --- propositions -------------------------------------------------------------

Rational PropWitness::implied_bound() const {
  if (kind == PropKind::Rank) return Rational(checked_mul(checked_mul(8 * d, d), n));
  return Rational(n, checked_mul(4, d));
}

PropWitness prop_r_witness(std::int64_t d, std::int64_t l, std::int64_t n) {
  require(d >= 2, "d >= 2");
  require(n >= 2, "n >= 2");
  require(l >= 2 && is_prime_power(static_cast<std::uint64_t>(l)), "l must be a prime power");
  require(l >= checked_mul(8, d), "l >= 8d");

  PropWitness w;
  w.kind = PropKind::Rank;
  w.d = d;
  w.l = l;
  w.n = n;
  // l^i < 4dn <= l^{i+1}
  const std::int64_t target = checked_mul(checked_mul(4, d), n);
  std::int64_t li = 1;
  unsigned i = 0;
  while (checked_mul(li, l) < target) {
    li *= l;
    ++i;
  }
  const std::int64_t li1 = checked_mul(li, l);
  w.i = i;
  w.l_pow_i = li;
  const bool i_ok = li < target && target <= li1;

  w.first_lo = checked_mul(2 * d, n);
  w.first_hi = checked_mul(checked_mul(8 * d, d), n) - 1;
  w.second_lo = Rational(checked_mul(2 * d, li));
  w.second_hi = Rational(li1, 2);
  place_witness(w);

  const auto profile = FunctionFieldProfile::tower(static_cast<std::uint64_t>(l), i);
  w.genus_bound = profile.genus_bound;
  w.n1_lower = profile.n1_lower;
  const std::int64_t g = w.genus_bound;
  const std::int64_t N = w.N;
  const auto ff = check_ff_conditions(profile, BoundDirection::Rank, static_cast<unsigned>(d),
                                      static_cast<unsigned>(n), N);

  const std::int64_t dn_dli = checked_add(checked_mul(d, n), checked_mul(d, li));
  w.cond_a = ff.a;
  w.cond_b = ff.b && N >= dn_dli && dn_dli > checked_mul(d - 1, n + g - 1);
  w.cond_c = ff.c && w.n1_lower >= w.second_hi.floor() && w.second_hi.floor() >= N;
  w.cond_d_surrogate = n >= static_cast<std::int64_t>(i) + 2;
  w.cond_d_lemma = ff.d && high_degree_place_condition(g, static_cast<std::uint64_t>(l), static_cast<std::uint64_t>(n));
  w.conclusion = i_ok && N >= 1 && N <= w.first_hi;
  return w;
}

PropWitness prop_q_witness(std::int64_t d, std::int64_t l, std::int64_t n) {
  require(d >= 2, "d >= 2");
  require(l >= 2 && is_prime_power(static_cast<std::uint64_t>(l)), "l must be a prime power");
  require(n >= checked_mul(4, d), "n >= 4d");

  PropWitness w;
  w.kind = PropKind::Subrank;
  w.d = d;
  w.l = l;
  w.n = n;
  // 2d l^i <= n < 2d l^{i+1}
  const std::int64_t two_d = 2 * d;
  std::int64_t li = 1;
  unsigned i = 0;
  while (checked_mul(two_d, checked_mul(li, l)) <= n) {
    li *= l;
    ++i;
  }
  const std::int64_t li1 = checked_mul(li, l);
  w.i = i;
  w.l_pow_i = li;
  const bool i_ok = checked_mul(two_d, li) <= n && n < checked_mul(two_d, li1);

  const std::int64_t half_up = ceil_div(li1, 2);
  w.first_lo = li;
  w.first_hi = half_up;
  w.second_lo = Rational(n, 4 * d);
  w.second_hi = Rational(n, two_d);
  place_witness(w);

  const auto profile = FunctionFieldProfile::tower(static_cast<std::uint64_t>(l), i);
  w.genus_bound = profile.genus_bound;
  w.n1_lower = profile.n1_lower;
  const std::int64_t g = w.genus_bound;
  const std::int64_t N = w.N;
  const auto ff = check_ff_conditions(profile, BoundDirection::Subrank, static_cast<unsigned>(d),
                                      static_cast<unsigned>(n), N);

  const std::int64_t d_sum = checked_mul(d, checked_add(N, li));
  const std::int64_t two_dN = checked_mul(two_d, N);
  w.cond_a = ff.a;
  w.cond_b = ff.b && checked_mul(d - 1, N + g - 1) < d_sum && d_sum <= two_dN && two_dN <= n;
  w.cond_c = ff.c && w.n1_lower >= half_up && half_up >= N;
  const std::int64_t two_pow = static_cast<std::int64_t>(saturating_pow(2, i + 2, std::uint64_t{1} << 62));
  w.cond_d_surrogate = n >= checked_mul(two_d, li) && checked_mul(two_d, li) >= two_pow &&
                       two_pow >= static_cast<std::int64_t>(i) + 2;
  w.cond_d_lemma = ff.d && high_degree_place_condition(g, static_cast<std::uint64_t>(l), static_cast<std::uint64_t>(n));
  w.conclusion = i_ok && N >= 1 && checked_mul(4 * d, N) >= n;
  return w;
}

// --- constants chain ----------------------------------------------------------

bool ConstantsReport::all_pass() const {
  bool ok = r_even && r_covers && r_minimal && log_check_exact && chain_float;
  if (m) ok = ok && subrank_fits && subrank_bound;
  return ok;
}

ConstantsReport theorem_chain(std::int64_t d, std::uint64_t q, std::optional<std::int64_t> n) {
  require(d >= 2, "d >= 2");
  require(is_prime_power(q), "q must be a prime power");
  ConstantsReport c;
  c.d = d;
  c.q = q;
  const std::uint64_t target = checked_mul(std::uint64_t{64}, checked_mul(static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(d)));
  const std::uint64_t q2 = checked_mul(q, q);
  // q^r >= target with r even, r >= 2 because target > 1.
  std::uint64_t prev = 1, pw = q2;
  unsigned r = 2;
  while (pw < target) {
    prev = pw;
    pw = checked_mul(pw, q2);
    r += 2;
  }
  c.r = r;
  c.r_even = r % 2 == 0;
  c.r_covers = pw >= target;
  c.r_minimal = prev < target;
  const std::int64_t d2 = checked_mul(d, d);
  c.log_check_exact = r <= 8 || checked_pow(std::int64_t{2}, r - 8) <= d2;

  c.C_d = 8.0 * static_cast<double>(d2) * std::pow(2.0 * std::log2(static_cast<double>(d)) + 8.0, d - 1);
  c.c_d = Rational(1, checked_mul(8, d2));
  c.schoolbook_bound = checked_pow(static_cast<std::int64_t>(r), static_cast<std::uint64_t>(d - 1));
  c.chain_value = checked_mul(c.schoolbook_bound, checked_mul(8, d2));
  c.chain_float = static_cast<double>(c.chain_value) <= c.C_d + kTolerance * std::max(1.0, c.C_d);

  c.n = n;
  if (n) {
    require(*n >= 1, "n >= 1");
    if (*n <= d2) {
      c.subrank_trivial = true;
    } else {
      const std::int64_t m = ceil_div(*n, 2 * d);
      c.m = m;
      c.subrank_fits = checked_mul(d - 1, 2 * m - 1) <= *n - 1;
      c.subrank_bound = Rational(m, 4 * d) >= Rational(*n, checked_mul(8, d2));
    }
  }
  return c;
}

}  // namespace arstab
