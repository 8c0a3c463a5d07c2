#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "excone/exact_matrix.hpp"

namespace excone {

struct ConicSolution;
class ConicProblem;

/// Symmetric n x n matrix of doubles; upper triangle storage, symmetric by
/// construction.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int n) : n_(n), tri_(std::size_t(n) * (n + 1) / 2, 0.0) {}

  static SymMatrix identity(int n);
  static SymMatrix from_upper(int n, std::vector<double> upper);

  int size() const { return n_; }
  double at(int i, int j) const { return tri_[index(i, j)]; }
  void set(int i, int j, double v) { tri_[index(i, j)] = v; }
  const std::vector<double>& upper() const { return tri_; }

  double frobenius_norm() const;
  SymMatrix leading(int k) const;
  ExactSymMatrix to_exact() const;  // entries are dyadic rationals, lossless

 private:
  std::size_t index(int i, int j) const;
  int n_ = 0;
  std::vector<double> tri_;
};

/// Cyclic Jacobi eigen-decomposition; iterates sweeps until the off-diagonal
/// Frobenius norm falls below 1e-12 * ||A||_F. Always converges for
/// symmetric input.
struct JacobiEigen {
  std::vector<double> values;              // ascending
  std::vector<std::vector<double>> vectors;  // vectors[k] is the eigenvector of values[k]
};
JacobiEigen jacobi_eigen(const SymMatrix& a);

/// Eigenvalues only, ascending.
std::vector<double> eig_sym(const SymMatrix& a);

enum class Verdict { In, Out, Unknown };

/// Witness payload for a membership verdict; which fields are set depends on
/// the cone and the verdict.
struct MembershipWitness {
  std::optional<std::pair<int, int>> entry;       // offending entry (NN out)
  std::optional<std::vector<double>> vector;      // x with x^T A x < 0, or a simplex point
  std::optional<SymMatrix> matrix;                // e.g. the N part of an SPN split, a Gram
  std::optional<ExactSymMatrix> exact_matrix;     // exact dual witness
  std::optional<QSqrt2> exact_value;              // exact pairing value
};

struct MembershipReport {
  std::string cone;
  Verdict verdict = Verdict::Unknown;
  double margin = 0.0;  // distance-to-boundary proxy; sign follows the verdict
  std::optional<MembershipWitness> witness;
  std::string note;

  std::string to_json() const;
};

/// The classical 5x5 copositive-but-not-SPN matrix with +-1 entries.
ExactSymMatrix horn_matrix();

/// Entrywise nonnegativity. Float input is tested strictly (no slack);
/// exact input via sign_of.
MembershipReport is_nn(const SymMatrix& a);
MembershipReport is_nn(const ExactSymMatrix& a);

/// PSD test with explicit tolerance: in iff lambda_min >= -tol.
MembershipReport is_psd(const SymMatrix& a, double tol = 1e-9);

/// SPN membership through the feasibility split A = P + N, P psd, N >= 0,
/// solved with the conic solver. "out" is only reported when a cheap exact
/// dual witness exists (negative diagonal entry, or a violated 2x2
/// copositive-dual inequality); solver infeasibility alone yields "unknown"
/// with infeasibility evidence in the note.
struct SpnOptions {
  double tol = 1e-9;
  int max_iter = 200;
  bool shortcuts = true;  // allow the PSD / NN / dual-witness fast paths
};
MembershipReport is_spn(const SymMatrix& a, const SpnOptions& opts = {});

enum class DualWitnessMode { CP, SPN };

/// Dual-violation certificate: verdict "out" iff <A,W> < 0 exactly.
/// mode CP with A larger than W (5x5) applies the leading-principal-submatrix
/// bootstrap <P5 A P5, W>. mode SPN checks exactly that W is DNN first.
MembershipReport not_in_cone_witness(const ExactSymMatrix& a, const ExactSymMatrix& w,
                                     DualWitnessMode mode);

/// Membership in the r-th multiplier cone: (sum x_i^2)^r * q_A is a sum of
/// squares. Poses the Gram feasibility problem; "in" requires the returned
/// Gram to reproduce the target within 1e-8 and have lambda_min >= -1e-8.
struct ParriloOptions {
  double tol = 1e-9;
  int max_iter = 200;
  double residual_tol = 1e-8;
  double eigen_tol = 1e-8;
};
MembershipReport parrilo_membership(const SymMatrix& a, int r, const ParriloOptions& opts = {});

/// Randomized copositivity refutation: evaluates the quadratic form on the
/// simplex (all vertices and edge midpoints deterministically, then `samples`
/// uniform points). A negative value disproves copositivity; none found is
/// only evidence.
struct CopositivitySampleReport {
  bool violation = false;
  double min_value = 0.0;
  std::vector<double> min_point;
  std::int64_t evaluations = 0;
};
CopositivitySampleReport copositivity_sample_check(const SymMatrix& a, std::int64_t samples,
                                                   std::uint64_t rng_seed);

}  // namespace excone
