#include "excone/pipeline.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "excone/cones.hpp"

namespace excone {

std::string tool_version() { return "excone 0.1.0"; }

namespace {

std::string strategy_name(SeedMode m) {
  switch (m) {
    case SeedMode::SosCos: return "sos-cos";
    case SeedMode::SosFull: return "sos-full";
    case SeedMode::Psd5: return "psd5";
    default: return "psd-family";
  }
}

struct CertifiedSolve {
  bool ok = false;
  std::vector<QSqrt2> x;
  std::string failure;
  int rounds = 0;
};

// solve -> round -> project -> exact cone checks, with the retry ladder:
// each failed certification round doubles the denominator bound and turns
// the sqrt2 component on; the final round also re-solves at tighter tol.
CertifiedSolve solve_and_certify(const ConicProblem& prob, const PipelineConfig& config,
                                 std::string* status_note) {
  CertifiedSolve out;
  double tol = config.solver_tol;
  ConicSolution sol = solve(prob, tol, config.solver_max_iter);
  if (status_note) *status_note = to_string(sol.status) + ": " + sol.message;
  if (sol.status != SolveStatus::Feasible && sol.status != SolveStatus::Optimal) {
    out.failure = to_string(sol.status) + ": " + sol.message;
    return out;
  }
  RoundingSpec spec = config.rounding;
  for (int round = 0; round < 4; ++round) {
    out.rounds = round + 1;
    if (round == 3) {
      tol *= 1e-2;
      const ConicSolution retry = solve(prob, tol, config.solver_max_iter);
      if (retry.status == SolveStatus::Feasible || retry.status == SolveStatus::Optimal)
        sol = retry;
    }
    const auto candidate = round_point(sol.x, prob, spec);
    auto projected = project_and_certify(candidate, prob);
    if (projected.ok) {
      out.ok = true;
      out.x = std::move(projected.x);
      return out;
    }
    out.failure = projected.failure;
    spec.denominator_bound *= 2;
    spec.allow_sqrt2 = true;
  }
  return out;
}

FourierCoeffs coeffs_from_block(const ConicProblem& prob, const std::vector<QSqrt2>& x,
                                int block) {
  const int off = prob.layout.block_offset(block);
  FourierCoeffs f;
  f.a.assign(x.begin() + off, x.begin() + off + prob.layout.blocks[block].dim());
  return f;
}

}  // namespace

Certificate run_seed(const PipelineConfig& config) {
  std::vector<SeedMode> modes;
  switch (config.seed_strategy) {
    case SeedStrategy::Auto:
      modes = {SeedMode::SosFull, SeedMode::PsdFamily, SeedMode::Psd5};
      break;
    case SeedStrategy::SosCos: modes = {SeedMode::SosCos}; break;
    case SeedStrategy::SosFull: modes = {SeedMode::SosFull}; break;
    case SeedStrategy::Psd5: modes = {SeedMode::Psd5}; break;
    case SeedStrategy::PsdFamily: modes = {SeedMode::PsdFamily}; break;
  }

  std::string attempts;
  for (const SeedMode mode : modes) {
    const int family_n = std::max(config.family_n, config.n_target);
    ConicProblem prob =
        build_seed_problem(config.epsilon, config.m, config.m_prime, mode, family_n);
    std::string note;
    CertifiedSolve cs = solve_and_certify(prob, config, &note);
    attempts += strategy_name(mode) + " -> " + (cs.ok ? "certified" : cs.failure) + "; ";
    if (!cs.ok) continue;

    Certificate cert;
    cert.kind = "e-DNN";
    cert.n = 5;
    cert.coeffs = coeffs_from_block(prob, cs.x, 0);
    cert.matrix = compression(cert.coeffs, 5);
    cert.pairing = frobenius_exact(cert.matrix, horn_matrix());
    if (mode == SeedMode::SosCos || mode == SeedMode::SosFull) {
      cert.psd_scope = "all";
      cert.gram_cos = block_matrix(prob, cs.x, 1);
      if (mode == SeedMode::SosFull) cert.gram_sin = block_matrix(prob, cs.x, 2);
    } else if (mode == SeedMode::PsdFamily) {
      cert.psd_scope = "n<=" + std::to_string(family_n);
    } else {
      cert.psd_scope = "n=5";
    }
    cert.tool_version = tool_version();
    std::ostringstream cfg;
    cfg << "seed epsilon=" << config.epsilon.str() << " m=" << config.m
        << " m'=" << config.m_prime << " mode=" << strategy_name(mode)
        << " rounds=" << cs.rounds;
    cert.config_summary = cfg.str();

    const VerifyReport rep = verify_certificate(cert);
    if (!rep.all_pass()) {
      for (const auto& c : rep.checks)
        if (!c.pass) attempts += "verify failed at " + c.name + "; ";
      continue;
    }
    return cert;
  }
  throw std::runtime_error("run_seed: no certificate found (" + attempts + ")");
}

Certificate run_extend(const Certificate& cert, int n) {
  if (cert.kind != "e-DNN") throw std::invalid_argument("run_extend: needs an e-DNN certificate");
  if (n < 5) throw std::invalid_argument("run_extend: n >= 5");

  Certificate out = cert;
  out.n = n;
  out.matrix = compression(cert.coeffs, n);

  if (!out.coeffs.all_nonnegative())
    throw std::runtime_error("run_extend: NN check failed (negative coefficient)");
  if (is_nn(out.matrix).verdict != Verdict::In)
    throw std::runtime_error("run_extend: NN check failed (negative entry)");
  const PsdCheck psd = is_psd_exact(out.matrix);
  if (!psd.psd) {
    std::string msg = "run_extend: exact PSD check failed at n=" + std::to_string(n);
    if (psd.witness_value) msg += " (witness value " + psd.witness_value->str() + ")";
    throw std::runtime_error(msg);
  }
  out.pairing = frobenius_exact(out.matrix.leading(5), horn_matrix());
  if (sign_of(out.pairing) >= 0)
    throw std::runtime_error("run_extend: pairing against the Horn matrix is not negative");
  out.tool_version = tool_version();
  out.config_summary = cert.config_summary + " | extended to n=" + std::to_string(n);
  return out;
}

Certificate run_ecop(const Certificate& dnn_cert, const PipelineConfig& config) {
  if (dnn_cert.kind != "e-DNN")
    throw std::invalid_argument("run_ecop: needs an e-DNN certificate");
  const ExactSymMatrix& a = dnn_cert.matrix;

  std::string attempts;
  std::vector<int> ks = {config.k};
  if (config.k == 1 && config.allow_k2_fallback) ks.push_back(2);
  for (const int k : ks) {
    ConicProblem prob = build_ecop_problem(a, k, config.epsilon_prime);
    std::string note;
    CertifiedSolve cs = solve_and_certify(prob, config, &note);
    attempts += "k=" + std::to_string(k) + " -> " + (cs.ok ? "certified" : cs.failure) + "; ";
    if (!cs.ok) continue;

    Certificate cert;
    cert.kind = "e-COP";
    cert.n = a.size();
    cert.k = k;
    cert.matrix = block_matrix(prob, cs.x, 0);
    cert.gram_poly = block_matrix(prob, cs.x, 1);
    cert.base_matrix = a;
    cert.base_coeffs = dnn_cert.coeffs;
    cert.pairing = frobenius_exact(cert.matrix, a);
    cert.tool_version = tool_version();
    std::ostringstream cfg;
    cfg << "ecop epsilon'=" << config.epsilon_prime.str() << " k=" << k
        << " rounds=" << cs.rounds;

    // belt and braces: the Gram is the proof, sampling is a sanity layer
    const auto spot =
        copositivity_sample_check(cert.matrix.to_float(), 100000, config.seed);
    if (spot.violation) {
      throw std::runtime_error(
          "run_ecop: internal inconsistency, sampled negative value despite Gram");
    }
    cfg << " spot_min=" << spot.min_value;
    cert.config_summary = cfg.str();

    const VerifyReport rep = verify_certificate(cert);
    if (!rep.all_pass()) {
      for (const auto& c : rep.checks)
        if (!c.pass) attempts += "verify failed at " + c.name + "; ";
      continue;
    }
    return cert;
  }
  throw std::runtime_error("run_ecop: no certificate found (" + attempts + ")");
}

VerifyReport run_verify(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("run_verify: cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const Certificate cert = Certificate::from_json(buf.str());
  return verify_certificate(cert);
}

}  // namespace excone
