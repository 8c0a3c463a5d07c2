#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "excone/solver.hpp"

namespace excone {

struct RoundingSpec {
  long denominator_bound = 1000000;
  bool allow_sqrt2 = false;
  int continued_fraction_depth = 64;
};

/// Best rational approximation with denominator <= bound (continued
/// fractions with the final semiconvergent).
Rat round_rational(double x, const RoundingSpec& spec);

/// Rounds to p/q, or to p/q + (r/s)*sqrt2 when allow_sqrt2 is set; returns
/// the candidate minimizing |x - value|, ties broken by smaller denominator.
QSqrt2 round_scalar(double x, const RoundingSpec& spec);

/// Block-aware rounding of a solver point: PSD blocks are rounded in matrix
/// entry space (svec scaling handled exactly), other blocks coordinatewise.
std::vector<QSqrt2> round_point(const Eigen::VectorXd& x, const ConicProblem& p,
                                const RoundingSpec& spec);

struct ProjectionOutcome {
  bool ok = false;
  std::string failure;     // "projection inconsistent" or "cone check failed: ..."
  std::vector<QSqrt2> x;   // exact point satisfying every equality row
  double correction_norm = 0.0;  // float image of the applied correction
};

/// Projects a rounded candidate exactly onto the affine equality set of p
/// (minimum-norm correction via solve_linear_exact; PSD coordinates are
/// svec-scaled, so minimum coordinate norm is minimum Frobenius norm), then
/// verifies every Nonneg coordinate via sign_of and every PSD block via
/// is_psd_exact. Free blocks are unconstrained.
ProjectionOutcome project_and_certify(const std::vector<QSqrt2>& candidate,
                                      const ConicProblem& p);

/// Recovers the exact matrix stored in a PSD (or matrix-shaped free) block.
ExactSymMatrix block_matrix(const ConicProblem& p, const std::vector<QSqrt2>& x, int block);

}  // namespace excone
