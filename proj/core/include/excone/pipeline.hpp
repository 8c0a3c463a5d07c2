#pragma once

#include <cstdint>
#include <string>

#include "excone/certificate.hpp"
#include "excone/rationalize.hpp"
#include "excone/solver.hpp"

namespace excone {

enum class SeedStrategy { Auto, SosCos, SosFull, Psd5, PsdFamily };

struct PipelineConfig {
  Rat epsilon{1, 20};
  Rat epsilon_prime{1, 10};
  int m = 6;
  int m_prime = 3;
  int k = 1;
  int n_target = 5;
  RoundingSpec rounding{};
  double solver_tol = 1e-9;
  int solver_max_iter = 200;
  std::uint64_t seed = 0;
  SeedStrategy seed_strategy = SeedStrategy::Auto;
  int family_n = 12;
  bool allow_k2_fallback = true;
};

/// Searches for a seed certificate: solve the seed feasibility problem,
/// round the interior point, project exactly onto the equalities, verify
/// every cone block exactly. With SeedStrategy::Auto the certificate modes
/// are tried strongest first (full SOS nonnegativity of f, then a finite
/// family PSD block, then only the 5x5 compression); feasibility of the
/// stronger modes depends on the parameters, and the certificate's psd_scope
/// records what was actually established. Throws std::runtime_error when no
/// mode yields a certificate.
Certificate run_seed(const PipelineConfig& config);

/// Grows a seed certificate to size n: rebuilds the compression from the
/// coefficient vector and re-runs the exact checks (entrywise nonnegativity,
/// exact PSD, and the negative pairing against the 5x5 leading block).
/// Throws when any exact check fails.
Certificate run_extend(const Certificate& cert, int n);

/// Searches for a copositive companion of the certificate's matrix:
/// feasibility SDP, rounding, exact projection, exact verification, plus a
/// randomized copositivity spot check as a sanity layer. Falls back from
/// k=1 to k=2 when the first relaxation shows infeasibility evidence.
Certificate run_ecop(const Certificate& dnn_cert, const PipelineConfig& config);

/// Re-verifies a serialized certificate from the file contents alone.
VerifyReport run_verify(const std::string& path);

std::string tool_version();

}  // namespace excone
