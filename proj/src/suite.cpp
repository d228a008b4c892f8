#include <atomic>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "arstab/verifier.hpp"

namespace arstab {

namespace {

[[noreturn]] void config_fail(const std::string& what) { throw Error(ErrorKind::ConfigError, what); }

const Json& req(const Json& entry, const char* key) {
  if (!entry.contains(key)) config_fail(std::string("entry missing '") + key + "'");
  return entry.at(key);
}

std::int64_t req_int(const Json& entry, const char* key) {
  const Json& v = req(entry, key);
  if (!v.is_number_integer()) config_fail(std::string("'") + key + "' must be an integer");
  return v.get<std::int64_t>();
}

std::int64_t opt_int(const Json& entry, const char* key, std::int64_t fallback) {
  return entry.contains(key) ? req_int(entry, key) : fallback;
}

Rational parse_rational(const Json& v) {
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (!v.is_string()) config_fail("rational must be an integer or \"p/q\" string");
  const std::string s = v.get<std::string>();
  try {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::logic_error&) {
    config_fail("bad rational '" + s + "'");
  }
}

std::vector<std::int64_t> prime_powers_upto(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> out;
  for (std::int64_t l = std::max<std::int64_t>(lo, 2); l <= hi; ++l)
    if (is_prime_power(static_cast<std::uint64_t>(l))) out.push_back(l);
  return out;
}

struct Outcome {
  bool violation = false;  // an asserted property failed or a hypothesis was violated
  bool invalid = false;    // malformed input or certificate
  std::string error_kind;
  std::string error_message;
  std::string detail;
  Json result;
};

struct GridCell {
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::optional<PropWitness> first_failure;
};

// Runs a grid of proposition witnesses. Cells (d, l) are processed by a
// thread pool but merged in their fixed order, so output does not depend on
// scheduling.
Outcome run_prop_grid(const Json& entry, PropKind kind) {
  const std::int64_t d_min = opt_int(entry, "d_min", 2);
  const std::int64_t d_max = req_int(entry, "d_max");
  const std::int64_t l_max = req_int(entry, "l_max");
  const std::int64_t n_max = req_int(entry, "n_max");
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  for (std::int64_t d = d_min; d <= d_max; ++d)
    for (std::int64_t l : prime_powers_upto(kind == PropKind::Rank ? 8 * d : 2, l_max)) pairs.emplace_back(d, l);

  std::vector<GridCell> cells(pairs.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < pairs.size();) {
      const auto [d, l] = pairs[k];
      GridCell& cell = cells[k];
      try {
        for (std::int64_t n = kind == PropKind::Rank ? 2 : 4 * d; n <= n_max; ++n) {
          const PropWitness w = kind == PropKind::Rank ? prop_r_witness(d, l, n) : prop_q_witness(d, l, n);
          ++cell.cases;
          if (!w.all_pass()) {
            if (!cell.first_failure) cell.first_failure = w;
            ++cell.failures;
          }
        }
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const unsigned n_threads = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 16));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  std::uint64_t cases = 0, failures = 0;
  Json first_failure = nullptr;
  for (const auto& cell : cells) {
    cases += cell.cases;
    if (cell.first_failure && failures == 0) first_failure = to_json(*cell.first_failure);
    failures += cell.failures;
  }
  Outcome o;
  o.violation = failures > 0;
  o.result["cases"] = cases;
  o.result["failures"] = failures;
  o.result["first_failure"] = first_failure;
  o.detail = "cases=" + std::to_string(cases) + " failures=" + std::to_string(failures);
  return o;
}

Outcome run_fact_random(const Json& entry, std::uint64_t seed) {
  const std::int64_t samples = req_int(entry, "samples");
  std::mt19937_64 rng(static_cast<std::uint64_t>(opt_int(entry, "seed", static_cast<std::int64_t>(seed))));
  auto uniform = [&](std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  std::int64_t accepted = 0, counterexamples = 0;
  while (accepted < samples) {
    const std::int64_t a = uniform(-1000, 1000);
    const std::int64_t b = a + uniform(0, 100);
    const std::int64_t den = uniform(1, 20);
    const Rational x(uniform(den * (a - 100), den * b), den);
    const Rational y = x + Rational(1) + Rational(uniform(0, 100 * den), den);
    const IntervalFact f = check_interval_fact(a, b, x, y);
    if (!f.hypotheses_hold()) continue;
    ++accepted;
    // Oracle: linear scan of [a, b].
    std::optional<std::int64_t> scan;
    for (std::int64_t v = a; v <= b && !scan; ++v)
      if (x <= Rational(v) && Rational(v) <= y) scan = v;
    if (!f.witness || f.witness != scan) ++counterexamples;
  }
  Outcome o;
  o.violation = counterexamples > 0;
  o.result["samples"] = accepted;
  o.result["counterexamples"] = counterexamples;
  o.detail = "samples=" + std::to_string(accepted) + " counterexamples=" + std::to_string(counterexamples);
  return o;
}

Outcome run_constants_grid(const Json& entry) {
  const std::int64_t d_max = req_int(entry, "d_max");
  const std::int64_t span = opt_int(entry, "n_span", 50);
  const Json& qs = req(entry, "qs");
  std::uint64_t cases = 0, failures = 0;
  Json first_failure = nullptr;
  for (std::int64_t d = 2; d <= d_max; ++d) {
    for (const auto& qj : qs) {
      const auto q = qj.get<std::uint64_t>();
      std::vector<std::optional<std::int64_t>> ns{std::nullopt};
      for (std::int64_t n = d * d + 1; n <= d * d + span; ++n) ns.push_back(n);
      for (const auto& n : ns) {
        const ConstantsReport c = theorem_chain(d, q, n);
        ++cases;
        if (!c.all_pass()) {
          if (failures == 0) first_failure = to_json(c);
          ++failures;
        }
      }
    }
  }
  Outcome o;
  o.violation = failures > 0;
  o.result["cases"] = cases;
  o.result["failures"] = failures;
  o.result["first_failure"] = first_failure;
  o.detail = "cases=" + std::to_string(cases) + " failures=" + std::to_string(failures);
  return o;
}

Outcome run_entry(const std::string& kind, const Json& entry, std::uint64_t seed) {
  Outcome o;
  if (kind == "fact") {
    const IntervalFact f = check_interval_fact(req_int(entry, "a"), req_int(entry, "b"), parse_rational(req(entry, "x")),
                                               parse_rational(req(entry, "y")));
    o.violation = !f.hypotheses_hold() || !f.witness;
    o.result = to_json(f);
    o.detail = f.witness ? "witness=" + std::to_string(*f.witness) : "no witness";
  } else if (kind == "fact-random") {
    o = run_fact_random(entry, seed);
  } else if (kind == "prop-r" || kind == "prop-q") {
    const auto d = req_int(entry, "d"), l = req_int(entry, "l"), n = req_int(entry, "n");
    const PropWitness w = kind == "prop-r" ? prop_r_witness(d, l, n) : prop_q_witness(d, l, n);
    o.violation = !w.all_pass();
    o.result = to_json(w);
    o.detail = "i=" + std::to_string(w.i) + " N=" + std::to_string(w.N);
  } else if (kind == "prop-r-grid") {
    o = run_prop_grid(entry, PropKind::Rank);
  } else if (kind == "prop-q-grid") {
    o = run_prop_grid(entry, PropKind::Subrank);
  } else if (kind == "constants") {
    std::optional<std::int64_t> n;
    if (entry.contains("n")) n = req_int(entry, "n");
    const ConstantsReport c = theorem_chain(req_int(entry, "d"), static_cast<std::uint64_t>(req_int(entry, "q")), n);
    o.violation = !c.all_pass();
    o.result = to_json(c);
    o.detail = "r=" + std::to_string(c.r);
  } else if (kind == "constants-grid") {
    o = run_constants_grid(entry);
  } else if (kind == "stability") {
    StabilityParams p;
    p.q = static_cast<std::uint64_t>(req_int(entry, "q"));
    p.n = static_cast<unsigned>(req_int(entry, "n"));
    p.d = static_cast<unsigned>(req_int(entry, "d"));
    for (const auto& f : req(entry, "format")) p.format.push_back(f.get<std::size_t>());
    p.samples = static_cast<std::size_t>(req_int(entry, "samples"));
    p.seed = static_cast<std::uint64_t>(opt_int(entry, "seed", static_cast<std::int64_t>(seed)));
    const StabilityReport s = stability_experiment(p);
    o.violation = s.violations() > 0;
    o.result = to_json(s);
    o.detail = "samples=" + std::to_string(s.samples.size()) + " violations=" + std::to_string(s.violations());
  } else if (kind == "certificate") {
    const std::string path = req(entry, "file").get<std::string>();
    const Certificate cert = certificate_from_json(parse_json(read_file(path)));
    if (!verify_certificate(cert)) throw Error(ErrorKind::CertificateInvalid, "certificate does not verify: " + path);
    o.result["file"] = path;
    o.result["verified"] = true;
    o.detail = "verified";
  } else {
    config_fail("unknown check kind '" + kind + "'");
  }
  return o;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

// --- JSON views -----------------------------------------------------------------

Json to_json(const IntervalFact& f) {
  Json j;
  j["hypotheses_hold"] = f.hypotheses_hold();
  j["failed_hypothesis"] = f.hypotheses_hold() ? Json(nullptr) : Json(f.failed_hypothesis);
  j["witness"] = f.witness ? Json(*f.witness) : Json(nullptr);
  return j;
}

Json to_json(const PropWitness& w) {
  Json j;
  j["kind"] = w.kind == PropKind::Rank ? "rank" : "subrank";
  j["label"] = "profile-conditional";
  j["d"] = w.d;
  j["l"] = w.l;
  j["n"] = w.n;
  j["i"] = w.i;
  j["l_pow_i"] = w.l_pow_i;
  j["N"] = w.N;
  j["first_interval"] = {w.first_lo, w.first_hi};
  j["second_interval"] = {w.second_lo.str(), w.second_hi.str()};
  j["genus_bound"] = w.genus_bound;
  j["n1_lower"] = w.n1_lower;
  j["conditions"] = {{"fact_hypotheses", w.fact_hypotheses}, {"in_intervals", w.in_intervals},
                     {"a", w.cond_a},
                     {"b", w.cond_b},
                     {"c", w.cond_c},
                     {"d_surrogate", w.cond_d_surrogate},
                     {"d_lemma", w.cond_d_lemma},
                     {"conclusion", w.conclusion}};
  j["implied_bound"] = w.implied_bound().str();
  j["pass"] = w.all_pass();
  return j;
}

Json to_json(const ConstantsReport& c) {
  Json j;
  j["d"] = c.d;
  j["q"] = c.q;
  j["r"] = c.r;
  j["C_d"] = c.C_d;
  j["c_d"] = c.c_d.str();
  j["chain_value"] = c.chain_value;
  j["schoolbook_bound"] = c.schoolbook_bound;
  j["checks"] = {{"r_even", c.r_even},
                 {"r_covers", c.r_covers},
                 {"r_minimal", c.r_minimal},
                 {"log_check_exact", c.log_check_exact},
                 {"chain_float", c.chain_float}};
  j["n"] = c.n ? Json(*c.n) : Json(nullptr);
  j["m"] = c.m ? Json(*c.m) : Json(nullptr);
  if (c.n) {
    j["checks"]["subrank_trivial"] = c.subrank_trivial;
    if (c.m) {
      j["checks"]["subrank_fits"] = c.subrank_fits;
      j["checks"]["subrank_bound"] = c.subrank_bound;
    }
  }
  j["pass"] = c.all_pass();
  return j;
}

Json to_json(const StabilityReport& s) {
  Json j;
  j["q"] = s.params.q;
  j["n"] = s.params.n;
  j["d"] = s.params.d;
  j["format"] = s.params.format;
  j["seed"] = s.params.seed;
  j["q_hat"] = s.certs.q_hat;
  j["r_hat"] = s.certs.r_hat;
  j["q_certificate"] = s.certs.q_cert_id;
  j["r_certificate"] = s.certs.r_cert_id;
  Json samples = Json::array();
  for (const auto& x : s.samples) {
    Json e;
    e["index"] = x.index;
    e["bias_T"] = {{"count", x.bias_T.count}, {"q", x.bias_T.q}, {"exponent", x.bias_T.exponent}};
    e["bias_TK"] = {{"count", x.bias_TK.count}, {"q", x.bias_TK.q}, {"exponent", x.bias_TK.exponent}};
    e["ar_T"] = x.ar_T;
    e["ar_TK"] = x.ar_TK;
    e["lower_margin"] = x.lower_margin;
    e["upper_margin"] = x.upper_margin;
    e["holds"] = x.holds;
    samples.push_back(std::move(e));
  }
  j["samples"] = std::move(samples);
  j["violations"] = s.violations();
  return j;
}

// --- suite ----------------------------------------------------------------------

Json default_suite_config() {
  return Json::parse(R"({
  "schema": "arstab.suite-config/1",
  "seed": 20240607,
  "checks": [
    {"kind": "fact", "a": 1, "b": 5, "x": "23/10", "y": "34/10"},
    {"kind": "fact", "a": 2, "b": 2, "x": "3/2", "y": "5/2"},
    {"kind": "fact", "a": 5, "b": 3, "x": 0, "y": 9, "expect": "violation"},
    {"kind": "fact-random", "samples": 100000},
    {"kind": "prop-r", "d": 3, "l": 25, "n": 2},
    {"kind": "prop-r", "d": 2, "l": 16, "n": 2},
    {"kind": "prop-r", "d": 3, "l": 8, "n": 5, "expect": "violation"},
    {"kind": "prop-q", "d": 3, "l": 2, "n": 16},
    {"kind": "prop-q", "d": 2, "l": 3, "n": 8},
    {"kind": "prop-q", "d": 3, "l": 2, "n": 11, "expect": "violation"},
    {"kind": "prop-r-grid", "d_max": 5, "l_max": 64, "n_max": 1000000},
    {"kind": "prop-q-grid", "d_max": 5, "l_max": 64, "n_max": 1000000},
    {"kind": "constants", "d": 3, "q": 2},
    {"kind": "constants", "d": 2, "q": 64},
    {"kind": "constants", "d": 3, "q": 2, "n": 10},
    {"kind": "constants-grid", "d_max": 6, "qs": [2, 3, 4, 5, 7, 8, 9, 16, 25], "n_span": 50},
    {"kind": "stability", "q": 2, "n": 2, "d": 3, "format": [2, 2, 2], "samples": 50},
    {"kind": "stability", "q": 2, "n": 3, "d": 3, "format": [2, 2, 2], "samples": 50},
    {"kind": "stability", "q": 2, "n": 4, "d": 3, "format": [2, 2, 2], "samples": 50},
    {"kind": "stability", "q": 3, "n": 2, "d": 3, "format": [2, 2, 2], "samples": 50},
    {"kind": "stability", "q": 2, "n": 4, "d": 2, "format": [3, 3], "samples": 20}
  ]
})");
}

SuiteResult run_suite(const Json& config) {
  if (!config.is_object()) config_fail("suite config must be an object");
  if (config.contains("schema") && config.at("schema") != kSuiteConfigSchema) config_fail("unknown config schema");
  const Json& checks = req(config, "checks");
  if (!checks.is_array()) config_fail("'checks' must be an array");
  const std::uint64_t seed = static_cast<std::uint64_t>(opt_int(config, "seed", 0));

  SuiteResult out;
  Json results = Json::array();
  std::ostringstream csv;
  csv << "index,kind,status,error,detail\n";
  std::size_t passed = 0, failed = 0, invalid = 0, expected = 0;

  for (std::size_t idx = 0; idx < checks.size(); ++idx) {
    const Json& entry = checks[idx];
    if (!entry.is_object()) config_fail("check entry must be an object");
    const std::string kind = req(entry, "kind").get<std::string>();
    const bool expect_violation = entry.value("expect", std::string("pass")) == "violation";

    Outcome o;
    try {
      o = run_entry(kind, entry, seed);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ConfigError) throw;
      o = Outcome{};
      o.error_kind = std::string(to_string(e.kind()));
      o.error_message = e.what();
      o.detail = o.error_kind;
      const bool bad_input = e.kind() == ErrorKind::CertificateInvalid || e.kind() == ErrorKind::ParseError;
      if (bad_input) {
        o.invalid = true;
      } else {
        o.violation = true;
      }
    } catch (const nlohmann::json::exception& e) {
      config_fail(std::string("malformed entry: ") + e.what());
    }

    std::string status;
    if (o.invalid) {
      status = "invalid";
      ++invalid;
    } else if (o.violation) {
      status = expect_violation ? "expected-violation" : "fail";
      expect_violation ? ++expected : ++failed;
    } else {
      status = expect_violation ? "unexpected-pass" : "pass";
      expect_violation ? ++failed : ++passed;
    }

    Json r;
    r["index"] = idx;
    r["kind"] = kind;
    if (kind.rfind("prop-", 0) == 0) r["label"] = "profile-conditional";
    r["status"] = status;
    r["error"] = o.error_kind.empty() ? Json(nullptr)
                                      : Json({{"kind", o.error_kind}, {"message", o.error_message}});
    r["params"] = entry;
    r["result"] = o.result.is_null() ? Json::object() : o.result;
    results.push_back(std::move(r));
    csv << idx << ',' << csv_escape(kind) << ',' << status << ',' << csv_escape(o.error_kind) << ','
        << csv_escape(o.detail) << '\n';
  }

  out.exit_code = invalid > 0 ? ExitCode::InvalidInput : failed > 0 ? ExitCode::AssertionFailure : ExitCode::Pass;
  Json report;
  report["schema"] = kReportSchema;
  report["seed"] = seed;
  report["tolerance"] = kTolerance;
  report["config"] = config;
  report["results"] = std::move(results);
  report["summary"] = {{"total", checks.size()},
                       {"passed", passed},
                       {"expected_violations", expected},
                       {"failed", failed},
                       {"invalid", invalid},
                       {"exit_code", static_cast<int>(out.exit_code)}};
  out.report = std::move(report);
  out.csv = csv.str();
  return out;
}

std::string dump_report(const Json& report) { return report.dump(2) + "\n"; }

}  // namespace arstab
