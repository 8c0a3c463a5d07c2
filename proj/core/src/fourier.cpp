#include "excone/fourier.hpp"

#include <stdexcept>
#include <string>

namespace excone {

QSqrt2 FourierCoeffs::coeff(int i) const {
  if (i == 0) return QSqrt2(1);
  if (i >= 1 && i <= m()) return a[i - 1];
  return QSqrt2(0);
}

bool FourierCoeffs::all_nonnegative() const {
  for (const auto& ak : a)
    if (sign_of(ak) < 0) return false;
  return true;
}

Rat cos_product_integral(int j, int k, int l) {
  if (j < 0 || k < 0 || l < 0)
    throw std::invalid_argument("cos_product_integral: negative frequency");
  // cos a cos b cos c = 1/4 [cos(a+b+c) + cos(a+b-c) + cos(a-b+c) + cos(a-b-c)]
  // and int_0^1 cos(2 N pi x) dx = [N == 0]; symmetric in (j,k,l) by
  // construction.
  int hits = 0;
  hits += (j + k + l == 0);
  hits += (j + k - l == 0);
  hits += (j - k + l == 0);
  hits += (j - k - l == 0);
  return Rat(hits, 4);
}

ExactSymMatrix compression(const FourierCoeffs& f, int n) {
  if (n < 1) throw std::invalid_argument("compression: n must be positive");
  ExactSymMatrix out(n);
  const QSqrt2 r2 = QSqrt2::sqrt2();
  out.set(0, 0, QSqrt2(1));
  for (int k = 1; k < n; ++k) out.set(0, k, r2 * f.coeff(k));
  for (int j = 1; j < n; ++j)
    for (int k = j; k < n; ++k) out.set(j, k, f.coeff(k - j) + f.coeff(j + k));
  return out;
}

FourierCoeffs coeffs_from_seed(const ExactSymMatrix& a5) {
  if (a5.size() != 5) throw std::invalid_argument("coeffs_from_seed: matrix must be 5x5");
  const QSqrt2 r2 = QSqrt2::sqrt2();
  auto div_sqrt2 = [&](const QSqrt2& v) { return v / r2; };

  // 1-indexed entry references follow the compression pattern
  FourierCoeffs f;
  f.a.resize(6);
  f.a[0] = a5.at(3, 4);               // a1 = A45
  f.a[1] = div_sqrt2(a5.at(0, 2));    // a2 = A13 / sqrt2
  f.a[2] = div_sqrt2(a5.at(0, 3));    // a3 = A14 / sqrt2
  f.a[3] = div_sqrt2(a5.at(0, 4));    // a4 = A15 / sqrt2
  f.a[4] = a5.at(1, 4) - f.a[2];      // a5 = A25 - a3
  f.a[5] = a5.at(3, 3) - QSqrt2(1);   // a6 = A44 - 1

  const ExactSymMatrix rebuilt = compression(f, 5);
  for (int i = 0; i < 5; ++i) {
    for (int j = i; j < 5; ++j) {
      if (a5.at(i, j) != rebuilt.at(i, j)) {
        throw std::runtime_error("pattern mismatch: entry (" + std::to_string(i + 1) + "," +
                                 std::to_string(j + 1) + ") violates the compression form");
      }
    }
  }
  return f;
}

}  // namespace excone
