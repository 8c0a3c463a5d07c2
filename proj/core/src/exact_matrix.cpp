#include "excone/exact_matrix.hpp"

#include <stdexcept>
#include <utility>

#include "excone/cones.hpp"

namespace excone {

std::size_t ExactSymMatrix::index(int i, int j) const {
  if (i > j) std::swap(i, j);
  if (i < 0 || j >= n_) throw std::out_of_range("ExactSymMatrix: index");
  // row-major upper triangle: row i starts after i rows of lengths n, n-1, ...
  return std::size_t(i) * (2 * n_ - i + 1) / 2 + (j - i);
}

ExactSymMatrix ExactSymMatrix::identity(int n) {
  ExactSymMatrix m(n);
  for (int i = 0; i < n; ++i) m.set(i, i, QSqrt2(1));
  return m;
}

ExactSymMatrix ExactSymMatrix::from_upper(int n, std::vector<QSqrt2> upper) {
  if (upper.size() != std::size_t(n) * (n + 1) / 2)
    throw std::invalid_argument("ExactSymMatrix::from_upper: wrong length");
  ExactSymMatrix m(n);
  m.tri_ = std::move(upper);
  return m;
}

ExactSymMatrix ExactSymMatrix::leading(int k) const {
  if (k < 0 || k > n_) throw std::out_of_range("ExactSymMatrix::leading");
  ExactSymMatrix m(k);
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) m.set(i, j, at(i, j));
  return m;
}

SymMatrix ExactSymMatrix::to_float() const {
  SymMatrix m(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j) m.set(i, j, at(i, j).to_double());
  return m;
}

QSqrt2 frobenius_exact(const ExactSymMatrix& a, const ExactSymMatrix& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("frobenius_exact: dimension mismatch");
  QSqrt2 acc;
  for (int i = 0; i < a.size(); ++i) {
    acc += a.at(i, i) * b.at(i, i);
    for (int j = i + 1; j < a.size(); ++j) {
      QSqrt2 t = a.at(i, j) * b.at(i, j);
      acc += t + t;
    }
  }
  return acc;
}

namespace {

// Lifts a refutation vector of the current Schur complement back through the
// partial elimination: solves L^T x = w for unit lower-triangular L whose
// strictly-lower entries are the recorded multipliers.
std::vector<QSqrt2> lift_witness(const std::vector<std::vector<QSqrt2>>& mult, int n,
                                 std::vector<QSqrt2> w) {
  for (int r = n - 1; r >= 0; --r) {
    QSqrt2 acc = std::move(w[r]);
    for (int t = r + 1; t < n; ++t) {
      if (!mult[t][r].is_zero() && !w[t].is_zero()) acc -= mult[t][r] * w[t];
    }
    w[r] = std::move(acc);
  }
  return w;
}

QSqrt2 quadratic_form(const ExactSymMatrix& a, const std::vector<QSqrt2>& x) {
  QSqrt2 acc;
  const int n = a.size();
  for (int i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    acc += a.at(i, i) * x[i] * x[i];
    for (int j = i + 1; j < n; ++j) {
      if (x[j].is_zero()) continue;
      QSqrt2 t = a.at(i, j) * x[i] * x[j];
      acc += t + t;
    }
  }
  return acc;
}

}  // namespace

PsdCheck is_psd_exact(const ExactSymMatrix& a) {
  const int n = a.size();
  PsdCheck out;
  out.pivots.reserve(n);

  // dense working copy of the (logical) full matrix
  std::vector<std::vector<QSqrt2>> w(n, std::vector<QSqrt2>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w[i][j] = a.at(i, j);
  // multipliers of eliminated columns: mult[row][col], row > col
  std::vector<std::vector<QSqrt2>> mult(n, std::vector<QSqrt2>(n));

  auto refute = [&](std::vector<QSqrt2> trailing_w) {
    auto x = lift_witness(mult, n, std::move(trailing_w));
    out.psd = false;
    out.witness_value = quadratic_form(a, x);
    out.witness = std::move(x);
  };

  for (int i = 0; i < n; ++i) {
    const QSqrt2 d = w[i][i];
    const int s = sign_of(d);
    if (s < 0) {
      std::vector<QSqrt2> e(n);
      e[i] = QSqrt2(1);
      refute(std::move(e));
      return out;
    }
    if (s == 0) {
      int j = -1;
      for (int t = i + 1; t < n; ++t) {
        if (!w[i][t].is_zero()) {
          j = t;
          break;
        }
      }
      if (j < 0) {
        out.pivots.push_back(QSqrt2(0));
        continue;  // zero pivot with zero row: drop the coordinate
      }
      // pivot 0 but coupling c != 0: the 2x2 block [[0, c],[c, beta]] takes
      // the value beta - 2tc at (t, -1); t = (beta+1)/(2c) makes it -1
      const QSqrt2 c = w[i][j];
      const QSqrt2 beta = w[j][j];
      const QSqrt2 t = (beta + QSqrt2(1)) / (c + c);
      std::vector<QSqrt2> e(n);
      e[i] = t;
      e[j] = QSqrt2(-1);
      refute(std::move(e));
      return out;
    }
    out.pivots.push_back(d);
    for (int r = i + 1; r < n; ++r) mult[r][i] = w[i][r] / d;
    for (int r = i + 1; r < n; ++r) {
      if (w[i][r].is_zero()) continue;
      for (int cidx = r; cidx < n; ++cidx) {
        if (w[i][cidx].is_zero()) continue;
        w[r][cidx] -= mult[r][i] * w[i][cidx];
        if (cidx != r) w[cidx][r] = w[r][cidx];
      }
    }
  }
  out.psd = true;
  return out;
}

LinearSolveResult solve_linear_exact(const ExactMatrix& m, const std::vector<QSqrt2>& b) {
  const int rows = m.rows();
  const int cols = m.cols();
  if (int(b.size()) != rows)
    throw std::invalid_argument("solve_linear_exact: rhs length mismatch");

  // Gram system G y = b with G = M M^T; b in range(G) iff M x = b is
  // consistent, and then x = M^T y is the minimum-norm solution.
  std::vector<std::vector<QSqrt2>> g(rows, std::vector<QSqrt2>(rows + 1));
  for (int i = 0; i < rows; ++i) {
    for (int j = i; j < rows; ++j) {
      QSqrt2 acc;
      for (int k = 0; k < cols; ++k) {
        if (!m.at(i, k).is_zero() && !m.at(j, k).is_zero()) acc += m.at(i, k) * m.at(j, k);
      }
      g[i][j] = acc;
      if (j != i) g[j][i] = std::move(acc);
    }
    g[i][rows] = b[i];
  }

  // Gauss-Jordan to reduced row echelon form
  std::vector<int> pivot_col_of_row(rows, -1);
  int prow = 0;
  for (int col = 0; col < rows && prow < rows; ++col) {
    int sel = -1;
    for (int r = prow; r < rows; ++r) {
      if (!g[r][col].is_zero()) {
        sel = r;
        break;
      }
    }
    if (sel < 0) continue;
    std::swap(g[sel], g[prow]);
    const QSqrt2 inv = QSqrt2(1) / g[prow][col];
    for (int c = col; c <= rows; ++c) g[prow][c] *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == prow || g[r][col].is_zero()) continue;
      const QSqrt2 f = g[r][col];
      for (int c = col; c <= rows; ++c) g[r][c] -= f * g[prow][c];
    }
    pivot_col_of_row[prow] = col;
    ++prow;
  }

  LinearSolveResult res;
  for (int r = prow; r < rows; ++r) {
    if (!g[r][rows].is_zero()) {
      res.consistent = false;  // zero row with nonzero rhs
      return res;
    }
  }

  std::vector<QSqrt2> y(rows);
  for (int r = 0; r < prow; ++r) y[pivot_col_of_row[r]] = g[r][rows];

  res.x.assign(cols, QSqrt2());
  for (int k = 0; k < cols; ++k) {
    QSqrt2 acc;
    for (int i = 0; i < rows; ++i) {
      if (!y[i].is_zero() && !m.at(i, k).is_zero()) acc += m.at(i, k) * y[i];
    }
    res.x[k] = std::move(acc);
  }

  // the Gram route guarantees M x = b; verify anyway, it is cheap
  for (int i = 0; i < rows; ++i) {
    QSqrt2 acc;
    for (int k = 0; k < cols; ++k) {
      if (!res.x[k].is_zero() && !m.at(i, k).is_zero()) acc += m.at(i, k) * res.x[k];
    }
    if (acc != b[i]) {
      res.consistent = false;
      return res;
    }
  }
  res.consistent = true;
  return res;
}

}  // namespace excone
