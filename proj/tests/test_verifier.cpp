#include <doctest.h>

#include <filesystem>

#include "arstab/io.hpp"
#include "arstab/rank_bounds.hpp"
#include "arstab/verifier.hpp"
#include "oracles.hpp"

using namespace arstab;

namespace {

using i128 = __int128;

i128 ipow(i128 b, unsigned e) {
  i128 r = 1;
  while (e--) r *= b;
  return r;
}

i128 ceil_div(i128 a, i128 b) { return (a + b - 1) / b; }

struct Expected {
  unsigned i;
  i128 N;
};

// Direct integer evaluation of the rank-side choice of i and N.
Expected expected_r(i128 d, i128 l, i128 n) {
  unsigned i = 0;
  while (ipow(l, i + 1) < 4 * d * n) ++i;
  const i128 li = ipow(l, i);
  const i128 lo = std::max(2 * d * n, 2 * d * li);
  const i128 hi = std::min(8 * d * d * n - 1, ipow(l, i + 1) / 2);
  REQUIRE(lo <= hi);
  return {i, lo};
}

Expected expected_q(i128 d, i128 l, i128 n) {
  unsigned i = 0;
  while (2 * d * ipow(l, i + 1) <= n) ++i;
  const i128 li = ipow(l, i);
  const i128 lo = std::max(li, ceil_div(n, 4 * d));
  const i128 hi = std::min(ceil_div(ipow(l, i + 1), 2), n / (2 * d));
  REQUIRE(lo <= hi);
  return {i, lo};
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::ConfigError;
}

const std::vector<std::int64_t> kPrimePowers{2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37, 41, 43, 47, 49, 53, 59, 61, 64};

}  // namespace

TEST_CASE("Rational") {
  CHECK(Rational(34, 10) == Rational(17, 5));
  CHECK(Rational(-3, -6) == Rational(1, 2));
  CHECK(Rational(1, -2).num() == -1);
  CHECK(Rational(7, 2).floor() == 3);
  CHECK(Rational(7, 2).ceil() == 4);
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(-7, 2).ceil() == -3);
  CHECK(Rational(6, 3).floor() == 2);
  CHECK(Rational(6, 3).ceil() == 2);
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 3) - Rational(1, 2) == Rational(-1, 6));
  CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
  CHECK(Rational(1, 3) < Rational(34, 100));
  CHECK(Rational(23, 10).str() == "23/10");
  CHECK(Rational(4).str() == "4");
  CHECK_THROWS_AS(Rational(1, 0), Error);
}

TEST_CASE("check_interval_fact examples") {
  const IntervalFact f = check_interval_fact(1, 5, Rational(23, 10), Rational(34, 10));
  CHECK(f.hypotheses_hold());
  CHECK(f.witness == 3);
  CHECK(check_interval_fact(2, 2, Rational(3, 2), Rational(5, 2)).witness == 2);
  const IntervalFact bad = check_interval_fact(5, 3, Rational(0), Rational(9));
  CHECK(!bad.hypotheses_hold());
  CHECK(!bad.witness);
  CHECK(!check_interval_fact(1, 5, Rational(2), Rational(5, 2)).hypotheses_hold());
}

TEST_CASE("check_interval_fact against a scan oracle") {
  std::mt19937_64 rng(123);
  for (int k = 0; k < 20000; ++k) {
    const std::int64_t a = static_cast<std::int64_t>(rng() % 41) - 20;
    const std::int64_t b = a + static_cast<std::int64_t>(rng() % 20);
    const std::int64_t den = 1 + rng() % 7;
    const Rational x(static_cast<std::int64_t>(rng() % 300) - 150, den);
    const Rational y = x + Rational(static_cast<std::int64_t>(rng() % 200), den);
    const IntervalFact f = check_interval_fact(a, b, x, y);
    const bool hyp = a <= b && Rational(a) <= y && x <= Rational(b) && y - x >= Rational(1);
    CHECK(f.hypotheses_hold() == hyp);
    std::optional<std::int64_t> scan;
    for (std::int64_t t = a; t <= b && !scan; ++t)
      if (x <= Rational(t) && Rational(t) <= y) scan = t;
    if (hyp) {
      // The fact itself: the hypotheses guarantee a common integer.
      REQUIRE(scan.has_value());
      CHECK(f.witness == scan);
    }
  }
}

TEST_CASE("prop_r_witness examples") {
  const PropWitness w = prop_r_witness(3, 25, 2);
  CHECK(w.i == 0);
  CHECK(w.N == 12);
  CHECK(w.all_pass());
  CHECK(w.N <= 8 * 9 * 2);
  const PropWitness v = prop_r_witness(2, 16, 2);
  CHECK(v.i == 0);
  CHECK(v.all_pass());
  CHECK(kind_of([] { prop_r_witness(3, 8, 5); }) == ErrorKind::HypothesisViolated);
  CHECK(kind_of([] { prop_r_witness(2, 16, 1); }) == ErrorKind::HypothesisViolated);
  CHECK(kind_of([] { prop_r_witness(2, 24, 2); }) == ErrorKind::HypothesisViolated);
}

TEST_CASE("prop_q_witness examples") {
  const PropWitness w = prop_q_witness(3, 2, 16);
  CHECK(w.i == 1);
  CHECK(w.N == 2);
  CHECK(w.all_pass());
  const PropWitness v = prop_q_witness(2, 3, 8);
  CHECK(v.i == 0);
  CHECK(v.N == 1);
  CHECK(v.all_pass());
  CHECK(v.implied_bound() == Rational(8, 8));
  CHECK(kind_of([] { prop_q_witness(3, 2, 11); }) == ErrorKind::HypothesisViolated);
  CHECK(kind_of([] { prop_q_witness(3, 6, 100); }) == ErrorKind::HypothesisViolated);
}

TEST_CASE("proposition witnesses agree with direct integer evaluation") {
  for (std::int64_t d = 2; d <= 4; ++d) {
    for (std::int64_t l : kPrimePowers) {
      for (std::int64_t n = 2; n <= 3000; n += (n < 200 ? 1 : 37)) {
        CAPTURE(d);
        CAPTURE(l);
        CAPTURE(n);
        if (l >= 8 * d) {
          const PropWitness w = prop_r_witness(d, l, n);
          const Expected e = expected_r(d, l, n);
          CHECK(w.i == e.i);
          CHECK(w.N == static_cast<std::int64_t>(e.N));
          CHECK(w.all_pass());
          // Independent re-check of the function-field conditions.
          const i128 g = ipow(l, w.i) - 1;
          CHECK((d - 1) * (n + g - 1) < e.N);
          CHECK(ipow(l, w.i) * (l - 1) >= e.N);
          CHECK(e.N <= 8 * d * d * n - 1);
        }
        if (n >= 4 * d) {
          const PropWitness w = prop_q_witness(d, l, n);
          const Expected e = expected_q(d, l, n);
          CHECK(w.i == e.i);
          CHECK(w.N == static_cast<std::int64_t>(e.N));
          CHECK(w.all_pass());
          const i128 g = ipow(l, w.i) - 1;
          CHECK((d - 1) * (e.N + g - 1) < n);
          CHECK(4 * d * e.N >= n);
        }
      }
    }
  }
}

TEST_CASE("theorem_chain") {
  const ConstantsReport c = theorem_chain(3, 2);
  CHECK(c.r == 10);
  CHECK(c.log_check_exact);
  CHECK(c.chain_value == 7200);
  CHECK(c.chain_value <= c.C_d);
  CHECK(c.c_d == Rational(1, 72));
  CHECK(c.all_pass());

  const ConstantsReport s = theorem_chain(2, 64);
  CHECK(s.r == 2);
  CHECK(s.all_pass());

  const ConstantsReport m = theorem_chain(3, 2, 10);
  CHECK(m.m == 2);
  CHECK(!m.subrank_trivial);
  CHECK(m.subrank_fits);
  CHECK(m.subrank_bound);
  CHECK(m.all_pass());

  // Smallest even r with q^r >= 64 d^2, by direct scan.
  for (std::int64_t d = 2; d <= 8; ++d) {
    for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49, 64, 81, 128}) {
      unsigned r = 0;
      while (ipow(q, r) < 64 * d * d) r += 2;
      const ConstantsReport t = theorem_chain(d, q);
      CAPTURE(d);
      CAPTURE(q);
      CHECK(t.r == r);
      CHECK(t.all_pass());
      for (std::int64_t n = d * d + 1; n <= d * d + 60; ++n) CHECK(theorem_chain(d, q, n).all_pass());
    }
  }
  CHECK_THROWS_AS(theorem_chain(1, 2), Error);
  CHECK_THROWS_AS(theorem_chain(2, 6), Error);
}

TEST_CASE("stability on small formats") {
  const StabilityCertificates certs = stability_certificates(3, 2, 2);
  CHECK(certs.q_hat == 1);
  CHECK(certs.r_hat == 3);

  const Field f2 = Field::prime(2);
  const Field K = extend(f2, 2);
  const StabilitySample zero = stability_sample(Tensor(f2, {2, 2, 2}), K, 2, certs);
  CHECK(zero.ar_T == 0.0);
  CHECK(zero.ar_TK == 0.0);
  CHECK(zero.holds);

  StabilityParams p;
  p.q = 2;
  p.n = 2;
  p.d = 3;
  p.format = {2, 2, 2};
  p.samples = 50;
  p.seed = 7;
  const StabilityReport r = stability_experiment(p);
  CHECK(r.samples.size() == 50);
  CHECK(r.violations() == 0);
  const StabilityReport again = stability_experiment(p);
  CHECK(to_json(again).dump() == to_json(r).dump());

  // Matrices: analytic rank is rank on both sides.
  StabilityParams m;
  m.q = 2;
  m.n = 4;
  m.d = 2;
  m.format = {3, 3};
  m.samples = 20;
  m.seed = 3;
  const StabilityReport mr = stability_experiment(m);
  CHECK(mr.violations() == 0);
  for (const auto& s : mr.samples) CHECK(s.ar_TK == s.ar_T);
  CHECK(mr.certs.q_hat <= m.n);
  CHECK(mr.certs.r_hat >= m.n);

  p.format = {2, 2};
  CHECK_THROWS_AS(stability_experiment(p), Error);
}

TEST_CASE("suite statuses and exit codes") {
  Json cfg = Json::parse(R"({"schema": "arstab.suite-config/1", "seed": 1, "checks": [
    {"kind": "fact", "a": 1, "b": 5, "x": "23/10", "y": "34/10"},
    {"kind": "prop-r", "d": 3, "l": 8, "n": 5, "expect": "violation"},
    {"kind": "prop-q-grid", "d_max": 3, "l_max": 9, "n_max": 500},
    {"kind": "constants", "d": 3, "q": 2}
  ]})");
  const SuiteResult ok = run_suite(cfg);
  CHECK(ok.exit_code == ExitCode::Pass);
  CHECK(ok.report.at("schema") == kReportSchema);
  CHECK(ok.report.at("summary").at("expected_violations") == 1);
  CHECK(ok.report.at("results").at(1).at("status") == "expected-violation");
  CHECK(ok.report.at("results").at(1).at("error").at("kind") == "HypothesisViolated");
  CHECK(ok.csv.rfind("index,kind,status,error,detail\n", 0) == 0);
  CHECK(dump_report(run_suite(cfg).report) == dump_report(ok.report));

  Json unexpected = cfg;
  unexpected["checks"][1].erase("expect");
  CHECK(run_suite(unexpected).exit_code == ExitCode::AssertionFailure);

  Json passes_anyway = cfg;
  passes_anyway["checks"][0]["expect"] = "violation";
  const SuiteResult up = run_suite(passes_anyway);
  CHECK(up.exit_code == ExitCode::AssertionFailure);
  CHECK(up.report.at("results").at(0).at("status") == "unexpected-pass");

  Json missing = cfg;
  missing["checks"][0].erase("a");
  CHECK(kind_of([&] { run_suite(missing); }) == ErrorKind::ConfigError);
  CHECK(kind_of([] { run_suite(Json::parse(R"({"checks": [{"kind": "nope"}]})")); }) == ErrorKind::ConfigError);
}

TEST_CASE("suite rejects corrupted certificates with exit 2") {
  const auto dir = std::filesystem::temp_directory_path() / "arstab_test_verifier";
  std::filesystem::create_directories(dir);
  RankDecomposition r = chudnovsky_rank(3, 2, Field::prime(2));
  const std::string good = (dir / "good.json").string();
  write_file(good, to_json(r).dump());
  r.terms[1].legs[0][0] = r.terms[1].legs[0][0] + Field::prime(2).one();
  const std::string bad = (dir / "bad.json").string();
  write_file(bad, to_json(r).dump());
  const std::string garbage = (dir / "garbage.json").string();
  write_file(garbage, "{\"schema\": ");

  auto run = [](const std::string& path) {
    Json cfg = Json::parse(R"({"checks": [{"kind": "certificate"}]})");
    cfg["checks"][0]["file"] = path;
    return run_suite(cfg);
  };
  CHECK(run(good).exit_code == ExitCode::Pass);
  const SuiteResult b = run(bad);
  CHECK(b.exit_code == ExitCode::InvalidInput);
  CHECK(b.report.at("results").at(0).at("status") == "invalid");
  CHECK(b.report.at("results").at(0).at("error").at("kind") == "CertificateInvalid");
  CHECK(run(garbage).exit_code == ExitCode::InvalidInput);
  std::filesystem::remove_all(dir);
}
