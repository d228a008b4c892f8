// Acceptance run: one PASS/FAIL line per criterion, each within its time limit.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "arstab/analytic_rank.hpp"
#include "arstab/certificates.hpp"
#include "arstab/io.hpp"
#include "arstab/rank_bounds.hpp"
#include "arstab/verifier.hpp"
#include "oracles.hpp"

using namespace arstab;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream note;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) note << "first failure: " << what;
    ok = ok && cond;
  }
};

// Regression value of brute_force_subrank(Mult_3(F_4/F_2)), fixed before the
// build by an independent enumeration.
constexpr std::size_t kPinnedSubrankMult34 = 1;

Tensor mult34() {
  const Field f2 = Field::prime(2);
  return mult_tensor(MultSpec{f2, extend(f2, 2), 3});
}

bool expect_kind(ErrorKind kind, const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

void c1(Check& c) {
  for (std::uint64_t q : {2, 3, 4, 5}) {
    const Field f = field_of_order(q);
    for (unsigned n = 1; n <= 5; ++n) {
      const ARValue ar = analytic_rank(diagonal(n, 2, f));
      c.expect(ar.exact.count == 1 && ar.exact.exponent == n && ar.value == static_cast<double>(n),
               "AR(identity) q=" + std::to_string(q) + " n=" + std::to_string(n));
    }
  }
  const Tensor t = mult34();
  const ExactBias b = bias(t);
  c.expect(b.count == 7 && b.exponent == 4 && b.q == 2, "bias(Mult_3(F_4/F_2)) = 7/16");
  c.expect(oracle::zero_slice_count(t, 0) == 7, "slice-count oracle");
  c.expect(std::fabs(bias_via_characters(t) - 0.4375) < kTolerance, "character oracle on Mult_3(F_4/F_2)");
  std::mt19937_64 rng(1);
  for (std::uint64_t q : {2, 3, 4}) {
    const Field f = field_of_order(q);
    for (int k = 0; k < 10; ++k) {
      const Tensor r = oracle::random_tensor(f, {2, 2, 2}, rng);
      c.expect(std::fabs(bias_via_characters(r) - bias(r).value()) < kTolerance, "character oracle, random");
    }
  }
  c.note << "bias(Mult_3(F_4/F_2)) = " << b.count << "/" << b.denominator();
}

void c2(Check& c) {
  std::mt19937_64 rng(20240607);
  std::size_t by_degree[5] = {};
  for (int k = 0; k < 200; ++k) {
    const std::uint64_t q = 2 + rng() % 3;
    const Field f = field_of_order(q);
    const std::size_t r = 1 + rng() % 5, cols = 1 + rng() % 5;
    const Tensor t = oracle::random_tensor(f, {r, cols}, rng);
    const double ar = analytic_rank(t).value;
    const std::size_t rank = matrix_rank(f, {t.codes().begin(), t.codes().end()}, r, cols);
    c.expect(ar == static_cast<double>(rank), "AR = rank, sample " + std::to_string(k));
    // Largest degree <= the drawn one that keeps the count within the bias guard.
    unsigned deg = 2 + rng() % 3;
    auto fits = [&](unsigned e) {
      return std::pow(static_cast<double>(q), static_cast<double>(e * std::min(r, cols))) *
                 static_cast<double>(std::max(r, cols)) <=
             1e8;
    };
    while (!fits(deg)) --deg;
    const Field K = extend(f, deg);
    c.expect(analytic_rank(base_change(t, K)).value == ar, "AR(T^K) = AR(T), sample " + std::to_string(k));
    ++by_degree[deg];
  }
  c.note << "200 matrices; base changes by degree 2/3/4: " << by_degree[2] << "/" << by_degree[3] << "/"
         << by_degree[4];
}

void c3(Check& c) {
  std::size_t ranks = 0, subranks = 0;
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9}) {
    const Field f = field_of_order(q);
    for (unsigned d = 2; d <= 4; ++d) {
      for (unsigned n = 1; n <= 4; ++n) {
        const std::size_t r = (d - 1) * (n - 1) + 1;
        const std::string at = "d=" + std::to_string(d) + " n=" + std::to_string(n) + " q=" + std::to_string(q);
        if (r <= q + 1) {
          const RankDecomposition dec = chudnovsky_rank(d, n, f);
          c.expect(dec.rank() == r && verify_decomposition(dec), "chudnovsky_rank " + at);
          ++ranks;
        }
        for (std::size_t N = 1; N <= q + 1 && (d - 1) * (N - 1) < n; ++N) {
          c.expect(verify_restriction(chudnovsky_subrank(d, n, f, N)), "chudnovsky_subrank " + at);
          ++subranks;
        }
      }
    }
  }
  c.note << ranks << " rank certificates, " << subranks << " subrank certificates";
}

void c4(Check& c) {
  const Tensor t = mult34();
  const Field f2 = Field::prime(2);
  const BruteForceRank br = brute_force_rank(t, 3);
  const RankDecomposition cert = chudnovsky_rank(3, 2, f2);
  c.expect(br.rank == 3, "brute_force_rank = 3");
  c.expect(cert.rank() == 3 && verify_decomposition(cert), "3-term certificate");
  c.expect(flattening_bound(t) == 2, "flattening bound 2");
  const BruteForceSubrank bs = brute_force_subrank(t, 2);
  c.expect(bs.subrank == kPinnedSubrankMult34, "brute_force_subrank = pinned r*");
  c.expect(verify_restriction(chudnovsky_subrank(3, 2, f2, 1)), "certified <1>");
  c.note << "rank 3, flattening 2, r* = " << bs.subrank;
}

void c5(Check& c) {
  const Field f2 = Field::prime(2);
  const Field f4 = extend(f2, 2);
  const RankDecomposition r = compose_rank(chudnovsky_rank(3, 2, f4), chudnovsky_rank(3, 2, f2));
  c.expect(r.rank() == 9 && verify_decomposition(r), "9-term Mult_3(F_16/F_2)");
  c.expect(std::get<MultSpec>(r.target).top.order() == 16, "target F_16");
  const RestrictionCertificate s = compose_subrank(chudnovsky_subrank(3, 3, f4, 2), chudnovsky_subrank(3, 2, f2, 1));
  c.expect(std::get<DiagonalSpec>(s.target).size == 2 && verify_restriction(s), "<2> <= Mult_3(F_64/F_2)");
  c.note << "9 terms; <2> <= Mult_3(F_64/F_2)";
}

void c6(Check& c) {
  std::size_t valid = 0, rejected = 0;
  for (std::uint64_t q : {2, 3}) {
    for (unsigned m = 1; m <= 3; ++m) {
      for (unsigned n = 1; n <= 5; ++n) {
        for (unsigned d = 2; d <= 4; ++d) {
          const std::string at = "q=" + std::to_string(q) + " m=" + std::to_string(m) + " n=" + std::to_string(n) +
                                 " d=" + std::to_string(d);
          if (n - 1 >= (d - 1) * (m - 1)) {
            c.expect(verify_restriction(verify_qmon(q, m, n, d)), "qmon " + at);
            ++valid;
          } else {
            c.expect(expect_kind(ErrorKind::HypothesisViolated, [&] { verify_qmon(q, m, n, d); }), "qmon error " + at);
            ++rejected;
          }
        }
      }
    }
  }
  c.note << valid << " verified, " << rejected << " rejected";
}

void c7(Check& c) {
  c.expect(count_places_rational(2, 2) == 1, "(2,2) -> 1");
  c.expect(count_places_rational(3, 3) == 8, "(3,3) -> 8");
  c.expect(count_places_rational(2, 1) == 3, "(2,1) -> 3");
  for (std::uint64_t q : {2, 3, 4}) {
    const Field f = field_of_order(q);
    for (unsigned n = 2; n <= 6; ++n)
      c.expect(count_places_rational(q, n) == oracle::count_irreducible(f, n),
               "q=" + std::to_string(q) + " n=" + std::to_string(n));
  }
  c.note << "q in {2,3,4}, n <= 6";
}

Json run_checks(const Json& checks) {
  Json cfg;
  cfg["schema"] = kSuiteConfigSchema;
  cfg["seed"] = default_suite_config().at("seed");
  cfg["checks"] = checks;
  return run_suite(cfg).report;
}

void expect_suite(Check& c, const Json& report) {
  for (const auto& r : report.at("results")) {
    c.expect(r.at("status") == "pass", r.at("kind").get<std::string>() + ": " + r.at("status").get<std::string>());
    c.note << r.at("kind").get<std::string>() << " " << r.at("result").dump() << "; ";
  }
}

void c8(Check& c) {
  expect_suite(c, run_checks(Json::parse(R"([{"kind": "fact-random", "samples": 100000}])")));
}

void c9(Check& c) {
  expect_suite(c, run_checks(Json::parse(R"([
    {"kind": "prop-r-grid", "d_max": 5, "l_max": 64, "n_max": 1000000},
    {"kind": "prop-q-grid", "d_max": 5, "l_max": 64, "n_max": 1000000}])")));
}

void c10(Check& c) {
  expect_suite(c, run_checks(Json::parse(
                      R"([{"kind": "constants-grid", "d_max": 6, "qs": [2, 3, 4, 5, 7, 8, 9, 16, 25], "n_span": 50}])")));
}

void c11(Check& c) {
  struct Case {
    std::uint64_t q;
    unsigned n;
  };
  for (const Case k : {Case{2, 2}, Case{2, 3}, Case{2, 4}, Case{3, 2}}) {
    StabilityParams p;
    p.q = k.q;
    p.n = k.n;
    p.d = 3;
    p.format = {2, 2, 2};
    p.samples = 50;
    p.seed = 20240607;
    const StabilityReport r = stability_experiment(p);
    c.expect(r.samples.size() == 50 && r.violations() == 0,
             "q=" + std::to_string(k.q) + " n=" + std::to_string(k.n));
    c.note << "q=" << k.q << " n=" << k.n << " Q=" << r.certs.q_hat << " R=" << r.certs.r_hat
           << " violations=" << r.violations() << "; ";
  }
}

void c12(Check& c) {
  const std::string a = dump_report(run_suite(default_suite_config()).report);
  const std::string b = dump_report(run_suite(default_suite_config()).report);
  c.expect(a == b, "byte-identical reports");
  c.expect(Json::parse(a).at("summary").at("exit_code") == 0, "default suite green");
  c.note << a.size() << " bytes, identical";
}

struct Criterion {
  const char* name;
  double limit_s;
  void (*run)(Check&);
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"C1 analytic rank ground truth", 1, c1},
      {"C2 matrix-rank equivalence", 10, c2},
      {"C3 genus-zero certificates", 30, c3},
      {"C4 brute-force oracle equivalence", 60, c4},
      {"C5 composition", 10, c5},
      {"C6 qmon restriction", 10, c6},
      {"C7 place counting", 5, c7},
      {"C8 interval fact", 5, c8},
      {"C9 proposition grids", 60, c9},
      {"C10 constants chain", 5, c10},
      {"C11 stability", 300, c11},
      {"C12 determinism", 0, c12},
  };
  int failures = 0;
  for (const auto& cr : criteria) {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = cr.limit_s <= 0 || secs < cr.limit_s;
    if (!in_time) c.note << " over time limit";
    const bool pass = c.ok && in_time;
    failures += pass ? 0 : 1;
    if (cr.limit_s > 0)
      std::printf("%s %-36s %8.3f s (limit %g s)  %s\n", pass ? "PASS" : "FAIL", cr.name, secs, cr.limit_s,
                  c.note.str().c_str());
    else
      std::printf("%s %-36s %8.3f s (no limit)  %s\n", pass ? "PASS" : "FAIL", cr.name, secs, c.note.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures, std::size(criteria));
  return failures == 0 ? 0 : 1;
}
