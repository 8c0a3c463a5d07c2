#pragma once

#include <vector>

#include "excone/exact_matrix.hpp"

namespace excone {

/// Finitely supported cosine coefficient vector (a_1, ..., a_m) defining
/// f(x) = 1 + 2 * sum_k a_k cos(2 k pi x); a_0 = 1 implicit.
struct FourierCoeffs {
  std::vector<QSqrt2> a;

  int m() const { return int(a.size()); }
  /// a_i with a_0 = 1 and zero padding beyond m.
  QSqrt2 coeff(int i) const;
  /// All a_k >= 0, decided exactly.
  bool all_nonnegative() const;
};

/// Exact value of the triple cosine product integral
/// int_0^1 cos(2 j pi x) cos(2 k pi x) cos(2 l pi x) dx,
/// fully symmetric in (j, k, l).
Rat cos_product_integral(int j, int k, int l);

/// n x n compression of the multiplication operator by f on the cosine
/// subspace, over the orthonormal basis (1, sqrt2 cos 2pi x, ...,
/// sqrt2 cos 2(n-1)pi x):
///   A_11 = 1,  A_1k = sqrt2 * a_{k-1},  A_jk = a_{|j-k|} + a_{j+k-2}.
ExactSymMatrix compression(const FourierCoeffs& f, int n);

/// Reads the coefficient vector (m = 6) back from a 5x5 compression;
/// throws std::runtime_error("pattern mismatch ...") naming the first entry
/// equation that fails when the matrix is not of compression form.
FourierCoeffs coeffs_from_seed(const ExactSymMatrix& a5);

}  // namespace excone
