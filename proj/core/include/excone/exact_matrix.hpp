#pragma once

#include <optional>
#include <vector>

#include "excone/qsqrt2.hpp"

namespace excone {

class SymMatrix;  // float counterpart, cones.hpp

/// Symmetric n x n matrix over Q(sqrt2); only the upper triangle is stored
/// (row-major), so symmetry holds by construction.
class ExactSymMatrix {
 public:
  ExactSymMatrix() = default;
  explicit ExactSymMatrix(int n) : n_(n), tri_(std::size_t(n) * (n + 1) / 2) {}

  static ExactSymMatrix identity(int n);
  /// Builds from the row-major upper triangle (n(n+1)/2 values).
  static ExactSymMatrix from_upper(int n, std::vector<QSqrt2> upper);

  int size() const { return n_; }
  const QSqrt2& at(int i, int j) const { return tri_[index(i, j)]; }
  void set(int i, int j, QSqrt2 v) { tri_[index(i, j)] = std::move(v); }
  const std::vector<QSqrt2>& upper() const { return tri_; }

  /// Leading k x k principal submatrix.
  ExactSymMatrix leading(int k) const;

  bool operator==(const ExactSymMatrix& o) const { return n_ == o.n_ && tri_ == o.tri_; }

  SymMatrix to_float() const;

 private:
  std::size_t index(int i, int j) const;
  int n_ = 0;
  std::vector<QSqrt2> tri_;
};

/// Frobenius inner product <A,B> = Tr(AB) = sum_ij A_ij B_ij, exact.
QSqrt2 frobenius_exact(const ExactSymMatrix& a, const ExactSymMatrix& b);

/// Outcome of the exact PSD decision.
///
/// On success `pivots` holds the diagonal pivot sequence of the Schur
/// recursion (the certificate: all pivots nonnegative, and every zero pivot
/// had a zero row). On failure `witness` holds an exact vector x with
/// x^T A x < 0, and `witness_value` that negative value.
struct PsdCheck {
  bool psd = false;
  std::vector<QSqrt2> pivots;
  std::optional<std::vector<QSqrt2>> witness;
  std::optional<QSqrt2> witness_value;
};

/// Decides A >= 0 exactly by recursive Schur complementation:
/// a negative pivot refutes, a zero pivot with a nonzero row refutes
/// (with witness), a zero pivot with zero row skips, a positive pivot
/// eliminates. No permutations are performed.
PsdCheck is_psd_exact(const ExactSymMatrix& a);

/// Dense rectangular matrix over Q(sqrt2), row-major.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const QSqrt2& at(int i, int j) const { return a_[std::size_t(i) * cols_ + j]; }
  QSqrt2& at(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<QSqrt2> a_;
};

struct LinearSolveResult {
  bool consistent = false;
  std::vector<QSqrt2> x;  // minimum-norm exact solution when consistent
};

/// Exact linear solve in the least-squares sense: returns the minimum-norm
/// solution of the (always consistent) normal system M^T M x = M^T b;
/// reports inconsistent when the original system M x = b has no solution.
/// For consistent systems the returned x satisfies M x = b exactly and has
/// minimum Euclidean norm among all solutions.
LinearSolveResult solve_linear_exact(const ExactMatrix& m, const std::vector<QSqrt2>& b);

}  // namespace excone
