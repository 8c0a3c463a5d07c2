#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "excone/cones.hpp"
#include "excone/rng.hpp"

namespace excone {

/// Uniform sample from the Frobenius unit ball of Sym_n, generated through
/// the isometric coordinates (E_ii diagonal, (E_ij+E_ji)/sqrt2 off-diagonal):
/// the coordinate 2-norm equals the Frobenius norm.
struct BallSample {
  SymMatrix matrix;
  std::vector<double> coords;  // d = n(n+1)/2 values
};
BallSample sample_ball(int n, RngStream& rng);

struct VradEstimate {
  std::string cone;
  int n = 0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  std::int64_t hits = 0;
  std::int64_t excluded = 0;                   // predicate "unknown" draws
  double fraction = 0.0;
  double fraction_stderr = 0.0;
  double excluded_fraction = 0.0;
  double vrad = 0.0;
  std::pair<double, double> vrad_ci{0.0, 0.0};  // delta-method, +-2 stderr
};

using ConePredicate = std::function<Verdict(const SymMatrix&)>;

/// Monte Carlo volume-radius estimate: fraction of ball samples inside the
/// cone, vrad = fraction^(1/d). Deterministic for a fixed seed: the sample
/// stream is split into fixed chunks with derived substreams, so the result
/// does not depend on the number of worker threads.
VradEstimate vrad_estimate(int n, const ConePredicate& predicate, std::int64_t samples,
                           std::uint64_t seed, const std::string& cone_name = "",
                           int workers = 0);

/// Exact ball fraction of the nonnegative orthant section: 2^(-n(n+1)/2).
Rat nn_fraction_exact(int n);

/// Exact d-th root of an exact fraction when both numerator and denominator
/// are perfect d-th powers (e.g. (1/2^d)^(1/d) = 1/2).
std::optional<Rat> exact_root(const Rat& value, int d);

/// Exact decomposition of an extreme point of the nonnegative-ball section
/// into completely positive pieces:
///   i < j:  (E_ij+E_ji)/sqrt2 = sqrt2 (F/2 - (E_ii+E_jj)/2),  F = x x^T,
///           x the 0/1 indicator of {i,j}; both pieces are CP with
///           Frobenius norm <= 1.
///   i == j: E_ii itself is CP with norm 1.
/// Indices are 1-based; all identities are checked exactly.
struct Claim2Decomposition {
  ExactSymMatrix extreme;              // the extreme point
  ExactSymMatrix cp_plus;              // U
  ExactSymMatrix cp_minus;             // V (zero matrix in the diagonal case)
  std::vector<std::vector<QSqrt2>> cp_plus_factor;   // columns of B with U = B B^T
  std::vector<std::vector<QSqrt2>> cp_minus_factor;
  bool verified = false;
  std::string detail;
};
Claim2Decomposition claim2_decompose(int i, int j, int n);

/// Common-stream fractions for NN, PSD, DNN and SPN with samplewise
/// inclusion checking (every DNN sample must be NN, PSD and SPN).
struct SandwichReport {
  int n = 0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<VradEstimate> cones;  // nn, psd, dnn, spn
  std::int64_t inclusion_violations = 0;
  std::int64_t spn_unknown = 0;

  std::string to_json() const;
  std::string to_csv() const;
};
SandwichReport sandwich_check(int n, std::int64_t samples, std::uint64_t seed,
                              const SpnOptions& spn_opts = {});

/// CSV report (one row per cone) for a set of finished estimates.
std::string vrad_csv(const std::vector<VradEstimate>& rows);
std::string vrad_json(const std::vector<VradEstimate>& rows);

}  // namespace excone
