#pragma once

// Mechanical checks of the interval/proposition arithmetic behind the
// rank and subrank bounds, the constants chain, and the base-change
// stability experiment. Everything is exact 64/128-bit integer or rational
// arithmetic; overflow raises SizeGuard rather than wrapping.

#include <cstdint>
#include <compare>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "arstab/analytic_rank.hpp"
#include "arstab/io.hpp"
#include "arstab/rank_bounds.hpp"

namespace arstab {

inline constexpr double kTolerance = 1e-9;

/// Reduced fraction with positive denominator.
class Rational {
 public:
  Rational(std::int64_t num = 0, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  std::int64_t floor() const;
  std::int64_t ceil() const;
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_;
  std::int64_t den_;
};

struct IntervalFact {
  /// Name of the first failing hypothesis, empty when all hold.
  std::string failed_hypothesis;
  /// Smallest integer in [a, b] ∩ [x, y], if any.
  std::optional<std::int64_t> witness;

  bool hypotheses_hold() const { return failed_hypothesis.empty(); }
};

/// Integer points of [a, b] ∩ [x, y] with closed endpoints.
IntervalFact check_interval_fact(std::int64_t a, std::int64_t b, const Rational& x, const Rational& y);

enum class PropKind { Rank, Subrank };

struct PropWitness {
  PropKind kind = PropKind::Rank;
  std::int64_t d = 0, l = 0, n = 0;
  unsigned i = 0;
  std::int64_t l_pow_i = 0;
  /// 0 when the intersection is empty.
  std::int64_t N = 0;
  // First interval has integer endpoints for both propositions.
  std::int64_t first_lo = 0, first_hi = 0;
  Rational second_lo, second_hi;
  std::int64_t genus_bound = 0;
  std::int64_t n1_lower = 0;

  bool fact_hypotheses = false;
  bool in_intervals = false;
  bool cond_a = false;
  bool cond_b = false;
  bool cond_c = false;
  bool cond_d_surrogate = false;
  bool cond_d_lemma = false;
  /// rank: N <= 8 d^2 n - 1; subrank: 4 d N >= n.
  bool conclusion = false;

  bool all_pass() const {
    return fact_hypotheses && in_intervals && cond_a && cond_b && cond_c && cond_d_surrogate && cond_d_lemma &&
           conclusion;
  }
  /// "8d^2 n" for rank, "n/(4d)" for subrank, evaluated.
  Rational implied_bound() const;
};

/// Requires l a prime power, l >= 8d, n >= 2, d >= 2 (else HypothesisViolated).
PropWitness prop_r_witness(std::int64_t d, std::int64_t l, std::int64_t n);
/// Requires l a prime power, d >= 2, n >= 4d (else HypothesisViolated).
PropWitness prop_q_witness(std::int64_t d, std::int64_t l, std::int64_t n);

struct ConstantsReport {
  std::int64_t d = 0;
  std::uint64_t q = 0;
  unsigned r = 0;
  bool r_even = false;
  bool r_covers = false;     // q^r >= 64 d^2
  bool r_minimal = false;    // q^{r-2} < 64 d^2
  bool log_check_exact = false;  // 2^{r-8} <= d^2
  double C_d = 0;
  Rational c_d;
  /// r^{d-1} 8 d^2, exact.
  std::int64_t chain_value = 0;
  bool chain_float = false;  // chain_value <= C_d within tolerance
  /// Schoolbook bound r^{d-1} on R_d(r, q).
  std::int64_t schoolbook_bound = 0;

  std::optional<std::int64_t> n;
  /// Set when n > d^2.
  std::optional<std::int64_t> m;
  bool subrank_trivial = false;  // n <= d^2
  bool subrank_fits = false;     // (d-1)(2m-1) <= n-1
  bool subrank_bound = false;    // m/(4d) >= n/(8d^2)

  bool all_pass() const;
};

ConstantsReport theorem_chain(std::int64_t d, std::uint64_t q, std::optional<std::int64_t> n = std::nullopt);

struct StabilityParams {
  std::uint64_t q = 2;
  unsigned n = 2;
  unsigned d = 3;
  std::vector<std::size_t> format;
  std::size_t samples = 1;
  std::uint64_t seed = 0;
};

struct StabilityCertificates {
  std::size_t q_hat = 1;
  std::size_t r_hat = 0;
  std::string q_cert_id;
  std::string r_cert_id;
};

/// Builds and verifies Q̂ (max chudnovsky subrank, else the trivial <1>) and
/// R̂ (best rank certificate). Throws CertificateInvalid on a failed check.
StabilityCertificates stability_certificates(unsigned d, unsigned n, std::uint64_t q);

struct StabilitySample {
  std::size_t index = 0;
  ExactBias bias_T;
  ExactBias bias_TK;
  double ar_T = 0;
  double ar_TK = 0;
  double lower_margin = 0;  // AR(T^K) - (Q̂/n) AR(T)
  double upper_margin = 0;  // (R̂/n) AR(T) - AR(T^K)
  bool holds = false;
};

struct StabilityReport {
  StabilityParams params;
  StabilityCertificates certs;
  std::vector<StabilitySample> samples;

  std::size_t violations() const;
};

StabilityReport stability_experiment(const StabilityParams& params);
/// Single tensor against precomputed certificates.
StabilitySample stability_sample(const Tensor& t, const Field& K, unsigned n, const StabilityCertificates& certs);

/// Uniform coefficients drawn in row-major order as rng() mod q.
Tensor random_tensor(const Field& field, const std::vector<std::size_t>& dims, std::mt19937_64& rng);

// --- reports ------------------------------------------------------------------

inline constexpr const char* kReportSchema = "arstab.report/1";
inline constexpr const char* kSuiteConfigSchema = "arstab.suite-config/1";

Json to_json(const IntervalFact& f);
Json to_json(const PropWitness& w);
Json to_json(const ConstantsReport& c);
Json to_json(const StabilityReport& s);

enum class ExitCode : int { Pass = 0, AssertionFailure = 1, InvalidInput = 2 };

struct SuiteResult {
  Json report;
  std::string csv;
  ExitCode exit_code = ExitCode::Pass;
};

/// The built-in configuration covering every check kind.
Json default_suite_config();
/// Runs every entry of a suite config. Malformed configs throw ConfigError.
SuiteResult run_suite(const Json& config);

/// Stable textual form of a report.
std::string dump_report(const Json& report);

}  // namespace arstab
