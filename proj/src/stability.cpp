#include "arstab/verifier.hpp"

#include <sstream>

namespace arstab {

Tensor random_tensor(const Field& field, const std::vector<std::size_t>& dims, std::mt19937_64& rng) {
  Tensor t(field, dims);
  const std::uint64_t q = field.order();
  std::vector<std::uint64_t> codes(t.size());
  for (auto& c : codes) c = rng() % q;
  return Tensor(field, dims, std::move(codes));
}

StabilityCertificates stability_certificates(unsigned d, unsigned n, std::uint64_t q) {
  const Field F = field_of_order(q);
  StabilityCertificates out;

  const std::size_t N = max_chudnovsky_subrank(d, n, q);
  std::ostringstream qid;
  if (N >= 1) {
    const auto cert = chudnovsky_subrank(d, n, F, N);
    if (!verify_restriction(cert)) throw Error(ErrorKind::CertificateInvalid, "subrank certificate failed");
    out.q_hat = N;
    qid << "chudnovsky_subrank(d=" << d << ",n=" << n << ",q=" << q << ",N=" << N << ")";
  } else {
    out.q_hat = 1;
    qid << "trivial(<1>)";
  }
  out.q_cert_id = qid.str();

  const auto dec = best_rank_certificate(d, n, F);
  if (!verify_decomposition(dec)) throw Error(ErrorKind::CertificateInvalid, "rank certificate failed");
  out.r_hat = dec.rank();
  std::ostringstream rid;
  rid << "rank_decomposition(" << spec_id(dec.target) << ",terms=" << dec.rank() << ")";
  out.r_cert_id = rid.str();
  return out;
}

StabilitySample stability_sample(const Tensor& t, const Field& K, unsigned n, const StabilityCertificates& certs) {
  StabilitySample s;
  const ARValue ar = analytic_rank(t);
  const ARValue ar_k = analytic_rank(base_change(t, K));
  s.bias_T = ar.exact;
  s.bias_TK = ar_k.exact;
  s.ar_T = ar.value;
  s.ar_TK = ar_k.value;
  const double nn = static_cast<double>(n);
  s.lower_margin = s.ar_TK - static_cast<double>(certs.q_hat) / nn * s.ar_T;
  s.upper_margin = static_cast<double>(certs.r_hat) / nn * s.ar_T - s.ar_TK;
  s.holds = s.lower_margin >= -kTolerance && s.upper_margin >= -kTolerance;
  return s;
}

std::size_t StabilityReport::violations() const {
  std::size_t v = 0;
  for (const auto& s : samples) v += s.holds ? 0 : 1;
  return v;
}

StabilityReport stability_experiment(const StabilityParams& params) {
  if (params.format.size() != params.d) {
    throw Error(ErrorKind::DimensionMismatch, "tensor format must have d legs");
  }
  if (params.n < 1) throw Error(ErrorKind::HypothesisViolated, "extension degree must be >= 1");
  StabilityReport report;
  report.params = params;
  report.certs = stability_certificates(params.d, params.n, params.q);
  const Field F = field_of_order(params.q);
  const Field K = extend(F, params.n);
  std::mt19937_64 rng(params.seed);
  for (std::size_t k = 0; k < params.samples; ++k) {
    const Tensor t = random_tensor(F, params.format, rng);
    StabilitySample s = stability_sample(t, K, params.n, report.certs);
    s.index = k;
    report.samples.push_back(s);
  }
  return report;
}

}  // namespace arstab
