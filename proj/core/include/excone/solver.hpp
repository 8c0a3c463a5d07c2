#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "excone/cones.hpp"
#include "excone/fourier.hpp"
#include "excone/sos.hpp"

namespace excone {

enum class BlockKind { Nonneg, Psd, Free };

/// One variable block. Psd blocks are stored in scaled svec coordinates
/// (off-diagonal entries carry a factor sqrt2, so coordinate 2-norms equal
/// Frobenius norms and exact coefficients stay inside Q(sqrt2)).
struct Block {
  BlockKind kind = BlockKind::Nonneg;
  int size = 0;  // Nonneg/Free: length; Psd: matrix side
  int dim() const { return kind == BlockKind::Psd ? size * (size + 1) / 2 : size; }
};

int svec_dim(int side);
int svec_index(int i, int j, int side);                 // i <= j
std::vector<QSqrt2> svec_exact(const ExactSymMatrix& m);
ExactSymMatrix unsvec_exact(int side, const QSqrt2* coords);
Eigen::MatrixXd unsvec_float(int side, const Eigen::VectorXd& coords);
Eigen::VectorXd svec_float(const Eigen::MatrixXd& m);

struct VarLayout {
  std::vector<Block> blocks;
  std::vector<int> offsets;
  int total = 0;

  int add(BlockKind kind, int size, std::string name = {});
  std::vector<std::string> names;
  int block_offset(int b) const { return offsets[b]; }
};

/// Block-structured conic feasibility/optimization problem with affine
/// equality constraints. Coefficients are exact; the solver consumes a float
/// image, the rationalizer consumes the exact rows.
class ConicProblem {
 public:
  VarLayout layout;
  std::vector<QSqrt2> objective;  // empty means zero (pure feasibility)

  struct Row {
    std::string name;
    std::vector<std::pair<int, QSqrt2>> terms;  // (flat coordinate, coefficient)
    QSqrt2 rhs;
  };
  std::vector<Row> rows;

  int num_vars() const { return layout.total; }
  int num_rows() const { return int(rows.size()); }

  void add_row(Row r) { rows.push_back(std::move(r)); }

  Eigen::MatrixXd a_float() const;
  Eigen::VectorXd b_float() const;
  Eigen::VectorXd c_float() const;
  ExactMatrix equality_matrix() const;
  /// b - A x, exact.
  std::vector<QSqrt2> residual_exact(const std::vector<QSqrt2>& x) const;

  /// Debug/regression JSON (blocks, dense rows, rhs, objective).
  std::string to_json() const;
};

enum class SolveStatus { Optimal, Feasible, InfeasibleEvidence, Unknown };

std::string to_string(SolveStatus s);

struct ConicSolution {
  SolveStatus status = SolveStatus::Unknown;
  Eigen::VectorXd x;  // layout coordinates
  Eigen::VectorXd y;  // equality multipliers
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double min_cone_margin = 0.0;  // min over blocks: lambda_min (Psd), min coord (Nonneg)
  double objective = 0.0;
  double feasibility_margin = 0.0;  // optimum of the max-margin embedding (feasibility path)
  int iterations = 0;
  std::string message;
};

/// Dense primal-dual path-following interior-point solve with
/// Nesterov-Todd scaling on PSD blocks. Pure feasibility problems (zero
/// objective) are embedded as max-min-margin problems so that "feasible"
/// answers come with strictly interior points; the sign of the optimal
/// margin decides feasible / infeasible-evidence.
ConicSolution solve(const ConicProblem& p, double tol = 1e-9, int max_iter = 200);

/// Verifies a solution against the problem data independently of the solver
/// internals (residual via the exact rows, PSD margins via jacobi_eigen).
struct SolutionCheck {
  double equality_residual = 0.0;
  double min_cone_margin = 0.0;
};
SolutionCheck check_solution(const ConicProblem& p, const Eigen::VectorXd& x);

// ---- problem builders ----

/// How the seed search certifies positive semidefiniteness of the
/// compressions.
enum class SeedMode {
  SosCos,     // f = vc^T B vc, cosine Gram only
  SosFull,    // f = vc^T Bc vc + vs^T Bs vs: nonnegativity of f on the circle
  Psd5,       // the 5x5 compression itself constrained PSD
  PsdFamily,  // the family_n x family_n compression constrained PSD
};

/// Seed feasibility problem: a in Nonneg(m), Gram/compression blocks per
/// mode, coefficient-matching equalities, and the single pairing equality
/// <A5(a), H> = -eps.
ConicProblem build_seed_problem(const Rat& eps, int m, int m_prime,
                                SeedMode mode = SeedMode::SosCos, int family_n = 12);

/// Exceptional-copositive search: C free symmetric, G psd over the degree
/// (2+k) monomial basis, coefficient matching of (sum x^2)^k q_C with the
/// Gram expansion, and <C, A> = -eps'.
ConicProblem build_ecop_problem(const ExactSymMatrix& a, int k, const Rat& eps_prime);

/// Gram feasibility for a fixed homogeneous polynomial target of degree 2d
/// over MonomialBasis(n, d) (exact coefficients over MonomialBasis(n, 2d)).
ConicProblem build_poly_sos_problem(const std::vector<QSqrt2>& target, int n, int d);

/// Gram feasibility for a fixed even trig polynomial target.
ConicProblem build_trig_sos_problem(const TrigPoly& target, int m_prime, bool with_sine);

/// SPN split feasibility: A = P + N with P psd, N entrywise nonnegative.
ConicProblem build_spn_problem(const SymMatrix& a);

}  // namespace excone
