// Regenerates the bundled certificate fixtures under tests/data/.
// Run manually after solver or format changes:
//   ./excone_make_fixtures <output-dir>

#include <fstream>
#include <iostream>

#include "excone/fixtures.hpp"
#include "excone/pipeline.hpp"

using namespace excone;

namespace {

void write(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  std::cout << "wrote " << path << "\n";
}

// e-COP certificate whose matrix is the bundled reference C: only the Gram
// is searched for; the matrix itself is pinned.
Certificate certify_reference_cop() {
  const ExactSymMatrix c = fixtures::ecop_matrix();
  const int k = 1;
  const auto target = expand_target(c, k);
  ConicProblem prob = build_poly_sos_problem(target, c.size(), 2 + k);
  const ConicSolution sol = solve(prob, 1e-9, 200);
  if (sol.status != SolveStatus::Feasible && sol.status != SolveStatus::Optimal)
    throw std::runtime_error("reference Gram solve failed: " + sol.message);
  RoundingSpec spec;
  for (int round = 0; round < 4; ++round) {
    const auto candidate = round_point(sol.x, prob, spec);
    const auto projected = project_and_certify(candidate, prob);
    if (projected.ok) {
      Certificate cert;
      cert.kind = "e-COP";
      cert.n = c.size();
      cert.k = k;
      cert.matrix = c;
      cert.gram_poly = block_matrix(prob, projected.x, 0);
      cert.base_matrix = fixtures::seed_matrix();
      cert.base_coeffs = fixtures::seed_coeffs();
      cert.pairing = frobenius_exact(c, *cert.base_matrix);
      cert.tool_version = tool_version();
      cert.config_summary = "reference copositive matrix, freshly solved Gram, k=1";
      const VerifyReport rep = verify_certificate(cert);
      if (!rep.all_pass()) throw std::runtime_error("reference e-COP does not verify");
      return cert;
    }
    spec.denominator_bound *= 2;
    spec.allow_sqrt2 = true;
  }
  throw std::runtime_error("reference Gram certification failed");
}

}  // namespace

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : ".";
  try {
    // family seed: smallest parameter set where the full nonnegativity
    // certificate (cosine + sine Grams) is feasible at epsilon = 1/20 with a
    // comfortable interior margin
    PipelineConfig config;
    config.m = 10;
    config.m_prime = 5;
    config.seed_strategy = SeedStrategy::SosFull;
    const Certificate family = run_seed(config);
    write(dir + "/family_seed.json", family.to_json());

    const Certificate ref_ecop = certify_reference_cop();
    write(dir + "/reference_ecop.json", ref_ecop.to_json());

    // the pipeline's own e-COP companion of the bundled reference matrix
    Certificate ref_dnn;
    ref_dnn.kind = "e-DNN";
    ref_dnn.n = 5;
    ref_dnn.coeffs = fixtures::seed_coeffs();
    ref_dnn.matrix = fixtures::seed_matrix();
    ref_dnn.pairing = frobenius_exact(ref_dnn.matrix, horn_matrix());
    ref_dnn.psd_scope = "n=5";
    ref_dnn.tool_version = tool_version();
    write(dir + "/reference_dnn.json", ref_dnn.to_json());
  } catch (const std::exception& e) {
    std::cerr << "fixture generation failed: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
