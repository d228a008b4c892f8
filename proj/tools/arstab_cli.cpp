// arstab: command-line front end for the field, tensor, certificate and
// verifier layers. Exit codes: 0 pass, 1 assertion failure, 2 invalid input
// or certificate.

#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "arstab/io.hpp"
#include "arstab/verifier.hpp"

namespace {

using namespace arstab;

struct Outputs {
  std::string json_path;
  std::string csv_path;
};

void emit(const Json& j, const Outputs& out) {
  const std::string text = dump_report(j);
  if (out.json_path.empty() || out.json_path == "-") {
    std::cout << text;
  } else {
    write_file(out.json_path, text);
  }
}

int status_of(bool pass) { return pass ? 0 : 1; }

std::vector<std::size_t> parse_format(const std::string& s) {
  std::vector<std::size_t> dims;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, 'x')) {
    try {
      dims.push_back(std::stoul(part));
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::ConfigError, "bad --format '" + s + "', expected e.g. 2x2x2");
    }
  }
  return dims;
}

Rational parse_rational(const std::string& s) {
  try {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::ConfigError, "bad rational '" + s + "'");
  }
}

Json ar_json(const ARValue& ar) {
  return {{"count", ar.exact.count}, {"q", ar.exact.q}, {"exponent", ar.exact.exponent}, {"analytic_rank", ar.value}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"arstab: exact finite-field tensor tools and proof-arithmetic verifier"};
  app.require_subcommand(1);
  int rc = 0;

  // field
  std::uint64_t field_q = 0;
  auto* field_cmd = app.add_subcommand("field", "Print the canonical F_q (moduli as JSON)");
  field_cmd->add_option("--q", field_q, "Field order")->required();
  field_cmd->callback([&] {
    const Field f = field_of_order(field_q);
    Json j = to_json(f);
    j["name"] = f.name();
    j["order"] = f.order();
    std::cout << j.dump(2) << "\n";
  });

  // tensor print|convert
  std::string tensor_in, tensor_out;
  auto* tensor_cmd = app.add_subcommand("tensor", "Inspect or re-serialize a tensor file");
  tensor_cmd->require_subcommand(1);
  auto* tprint = tensor_cmd->add_subcommand("print", "Print shape, field and nonzero entries");
  tprint->add_option("file", tensor_in, "Tensor JSON")->required();
  tprint->callback([&] {
    const Tensor t = tensor_from_json(parse_json(read_file(tensor_in)));
    std::cout << "field " << t.field().name() << " dims";
    for (auto d : t.dims()) std::cout << ' ' << d;
    std::cout << "\n";
    std::vector<std::size_t> idx(t.order(), 0);
    for (std::size_t flat = 0; flat < t.size(); ++flat) {
      if (t.codes()[flat] != 0) {
        std::cout << "[";
        for (std::size_t k = 0; k < idx.size(); ++k) std::cout << (k ? "," : "") << idx[k];
        std::cout << "] = " << to_json(t.field().element(t.codes()[flat])).dump() << "\n";
      }
      for (std::size_t k = idx.size(); k-- > 0;) {
        if (++idx[k] < t.dim(k)) break;
        idx[k] = 0;
      }
    }
  });
  auto* tconvert = tensor_cmd->add_subcommand("convert", "Parse and write back in canonical form");
  tconvert->add_option("file", tensor_in, "Tensor JSON")->required();
  tconvert->add_option("--out", tensor_out, "Output path (default stdout)");
  tconvert->callback([&] {
    const Tensor t = tensor_from_json(parse_json(read_file(tensor_in)));
    emit(to_json(t), Outputs{tensor_out, {}});
  });

  // mult
  std::uint64_t mq = 2;
  unsigned mn = 2, md = 3, mm = 1;
  std::string mjson;
  auto* mult_cmd = app.add_subcommand("mult", "Structure tensor Mult_d(F_{q^n}/F_q)");
  mult_cmd->add_option("--q", mq)->required();
  mult_cmd->add_option("--n", mn)->required();
  mult_cmd->add_option("--d", md)->required();
  mult_cmd->add_option("--json", mjson, "Output path (default stdout)");
  mult_cmd->callback([&] {
    const Field base = field_of_order(mq);
    emit(to_json(mult_tensor(MultSpec{base, extend(base, mn), md})), Outputs{mjson, {}});
  });

  // qmon
  auto* qmon_cmd = app.add_subcommand("qmon", "Restriction certificate Mult_d(F_{q^m}) <= Mult_d(F_{q^n})");
  qmon_cmd->add_option("--q", mq)->required();
  qmon_cmd->add_option("--m", mm)->required();
  qmon_cmd->add_option("--n", mn)->required();
  qmon_cmd->add_option("--d", md)->required();
  qmon_cmd->add_option("--json", mjson, "Output path (default stdout)");
  qmon_cmd->callback([&] { emit(to_json(verify_qmon(mq, mm, mn, md)), Outputs{mjson, {}}); });

  // ar
  std::string ar_file, ar_method = "exact";
  auto* ar_cmd = app.add_subcommand("ar", "Analytic rank of a tensor");
  ar_cmd->add_option("--tensor", ar_file, "Tensor JSON")->required();
  ar_cmd->add_option("--method", ar_method)->check(CLI::IsMember({"exact", "char", "both"}));
  ar_cmd->callback([&] {
    const Tensor t = tensor_from_json(parse_json(read_file(ar_file)));
    Json j;
    if (ar_method != "char") j["exact"] = ar_json(analytic_rank(t));
    if (ar_method != "exact") j["character_sum_bias"] = bias_via_characters(t);
    std::cout << j.dump(2) << "\n";
  });

  // rank-decomp
  std::string rd_method = "best";
  auto* rd_cmd = app.add_subcommand("rank-decomp", "Certified rank decomposition of Mult_d(F_{q^n}/F_q)");
  rd_cmd->add_option("--q", mq)->required();
  rd_cmd->add_option("--n", mn)->required();
  rd_cmd->add_option("--d", md)->required();
  rd_cmd->add_option("--method", rd_method)->check(CLI::IsMember({"best", "chudnovsky", "schoolbook"}));
  rd_cmd->add_option("--json", mjson, "Output path (default stdout)");
  rd_cmd->callback([&] {
    const Field base = field_of_order(mq);
    const RankDecomposition dec = rd_method == "chudnovsky"   ? chudnovsky_rank(md, mn, base)
                                  : rd_method == "schoolbook" ? schoolbook_rank(md, mn, base)
                                                              : best_rank_certificate(md, mn, base);
    if (!verify_decomposition(dec)) throw Error(ErrorKind::CertificateInvalid, "generated decomposition fails");
    emit(to_json(dec), Outputs{mjson, {}});
  });

  // subrank-cert
  std::size_t sN = 0;
  auto* sc_cmd = app.add_subcommand("subrank-cert", "Certified <N> <= Mult_d(F_{q^n}/F_q)");
  sc_cmd->add_option("--q", mq)->required();
  sc_cmd->add_option("--n", mn)->required();
  sc_cmd->add_option("--d", md)->required();
  sc_cmd->add_option("--N", sN, "Diagonal size (default: largest valid)");
  sc_cmd->add_option("--json", mjson, "Output path (default stdout)");
  sc_cmd->callback([&] {
    const std::size_t N = sN ? sN : max_chudnovsky_subrank(md, mn, mq);
    const RestrictionCertificate c = chudnovsky_subrank(md, mn, field_of_order(mq), N);
    if (!verify_restriction(c)) throw Error(ErrorKind::CertificateInvalid, "generated certificate fails");
    emit(to_json(c), Outputs{mjson, {}});
  });

  // verify-cert
  std::string cert_file;
  auto* vc_cmd = app.add_subcommand("verify-cert", "Exactly verify a certificate file");
  vc_cmd->add_option("file", cert_file)->required();
  vc_cmd->callback([&] {
    const Certificate c = certificate_from_json(parse_json(read_file(cert_file)));
    if (!verify_certificate(c)) throw Error(ErrorKind::CertificateInvalid, "certificate does not verify");
    std::cout << "valid\n";
  });

  // places
  std::uint64_t pq = 2;
  unsigned pn = 1;
  auto* places_cmd = app.add_subcommand("places", "Degree-n places of the rational function field over F_q");
  places_cmd->add_option("--q", pq)->required();
  places_cmd->add_option("--n", pn)->required();
  places_cmd->callback([&] {
    if (!is_prime_power(pq)) throw Error(ErrorKind::HypothesisViolated, "q must be a prime power");
    std::cout << count_places_rational(pq, pn) << "\n";
  });

  // verify ...
  auto* verify_cmd = app.add_subcommand("verify", "Proof-arithmetic checks and experiments");
  verify_cmd->require_subcommand(1);
  Outputs vout;
  std::int64_t vd = 0, vl = 0, vn = 0, va = 0, vb = 0;
  std::uint64_t vq = 0, vseed = 0;
  std::string vx, vy, vformat, vconfig;
  std::size_t vsamples = 50;
  bool dump_default = false;
  auto add_outputs = [&](CLI::App* c) {
    c->add_option("--json", vout.json_path, "JSON report path (default stdout)");
    c->add_option("--csv", vout.csv_path, "CSV report path");
  };

  auto* vfact = verify_cmd->add_subcommand("fact", "Integer point of [a,b] ∩ [x,y]");
  vfact->add_option("--a", va)->required();
  vfact->add_option("--b", vb)->required();
  vfact->add_option("--x", vx, "rational, e.g. 23/10")->required();
  vfact->add_option("--y", vy)->required();
  add_outputs(vfact);
  vfact->callback([&] {
    const IntervalFact f = check_interval_fact(va, vb, parse_rational(vx), parse_rational(vy));
    emit(to_json(f), vout);
    rc = status_of(f.hypotheses_hold() && f.witness);
  });

  auto* vpr = verify_cmd->add_subcommand("prop-r", "Rank proposition witness");
  auto* vpq = verify_cmd->add_subcommand("prop-q", "Subrank proposition witness");
  for (auto* c : {vpr, vpq}) {
    c->add_option("--d", vd)->required();
    c->add_option("--l", vl)->required();
    c->add_option("--n", vn)->required();
    add_outputs(c);
  }
  vpr->callback([&] {
    const PropWitness w = prop_r_witness(vd, vl, vn);
    emit(to_json(w), vout);
    rc = status_of(w.all_pass());
  });
  vpq->callback([&] {
    const PropWitness w = prop_q_witness(vd, vl, vn);
    emit(to_json(w), vout);
    rc = status_of(w.all_pass());
  });

  auto* vconst = verify_cmd->add_subcommand("constants", "Constants chain for (d, q[, n])");
  vconst->add_option("--d", vd)->required();
  vconst->add_option("--q", vq)->required();
  vconst->add_option("--n", vn, "Extension degree for the subrank chain");
  add_outputs(vconst);
  vconst->callback([&] {
    std::optional<std::int64_t> n;
    if (vconst->count("--n")) n = vn;
    const ConstantsReport c = theorem_chain(vd, vq, n);
    emit(to_json(c), vout);
    rc = status_of(c.all_pass());
  });

  auto* vstab = verify_cmd->add_subcommand("stability", "Base-change stability experiment");
  vstab->add_option("--q", vq)->required();
  vstab->add_option("--n", vn)->required();
  vstab->add_option("--d", vd)->required();
  vstab->add_option("--format", vformat, "Tensor format, e.g. 2x2x2")->required();
  vstab->add_option("--samples", vsamples);
  vstab->add_option("--seed", vseed);
  add_outputs(vstab);
  vstab->callback([&] {
    StabilityParams p;
    p.q = vq;
    p.n = static_cast<unsigned>(vn);
    p.d = static_cast<unsigned>(vd);
    p.format = parse_format(vformat);
    p.samples = vsamples;
    p.seed = vseed;
    const StabilityReport s = stability_experiment(p);
    emit(to_json(s), vout);
    rc = status_of(s.violations() == 0);
  });

  auto* vsuite = verify_cmd->add_subcommand("suite", "Run a suite config (built-in default if none)");
  vsuite->add_option("--config", vconfig, "Suite config JSON");
  vsuite->add_flag("--dump-default-config", dump_default, "Print the built-in config and exit");
  add_outputs(vsuite);
  vsuite->callback([&] {
    if (dump_default) {
      std::cout << default_suite_config().dump(2) << "\n";
      return;
    }
    const Json config = vconfig.empty() ? default_suite_config() : parse_json(read_file(vconfig));
    const SuiteResult r = run_suite(config);
    emit(r.report, vout);
    if (!vout.csv_path.empty()) write_file(vout.csv_path, r.csv);
    const auto& s = r.report["summary"];
    std::cerr << "suite: " << s["passed"] << " passed, " << s["expected_violations"] << " expected violations, "
              << s["failed"] << " failed, " << s["invalid"] << " invalid\n";
    rc = static_cast<int>(r.exit_code);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
