#pragma once

#include <map>
#include <optional>
#include <vector>

#include "excone/exact_matrix.hpp"
#include "excone/fourier.hpp"

namespace excone {

/// Even trigonometric polynomial c_0 + sum_{k>=1} c_k cos(2 k pi x) with
/// exact coefficients.
struct TrigPoly {
  std::vector<QSqrt2> c;  // index = frequency

  static TrigPoly from_coeffs(const FourierCoeffs& f);  // c_0 = 1, c_k = 2 a_k
  int max_freq() const { return int(c.size()) - 1; }
  QSqrt2 coeff(int k) const { return k < int(c.size()) ? c[k] : QSqrt2(0); }
  bool operator==(const TrigPoly& o) const;
  double eval(double x) const;
};

/// Monomials of total degree exactly d in n variables, as exponent vectors in
/// descending lexicographic order ((d,0,...,0) first). Stable across runs;
/// certificate files rely on this ordering.
class MonomialBasis {
 public:
  MonomialBasis() = default;
  MonomialBasis(int n, int d);

  int vars() const { return n_; }
  int degree() const { return d_; }
  int size() const { return int(list_.size()); }
  const std::vector<int>& exponent(int i) const { return list_[i]; }
  int index_of(const std::vector<int>& e) const;  // -1 if absent

 private:
  int n_ = 0, d_ = 0;
  std::vector<std::vector<int>> list_;
  std::map<std::vector<int>, int> index_;
};

/// Cosine-coefficient vector of v^T G v for v = (1, cos 2pi x, ...,
/// cos 2m'pi x), via cos a cos b = (cos(a-b) + cos(a+b))/2. Linear in G,
/// exact. Result has length 2m'+1.
TrigPoly trig_gram_expand(const ExactSymMatrix& g);

/// Same for the sine basis (sin 2pi x, ..., sin 2m'pi x), via
/// sin a sin b = (cos(a-b) - cos(a+b))/2. Squares of odd trig polynomials
/// are even, so the result is again a cosine polynomial.
TrigPoly sine_gram_expand(const ExactSymMatrix& g);

/// Coefficient vector of w^T G w over MonomialBasis(n, 2d), where w is the
/// given degree-d basis: coefficient of mu is sum_{alpha+beta=mu} G_ab.
std::vector<QSqrt2> poly_gram_expand(const ExactSymMatrix& g, const MonomialBasis& basis);

/// Coefficient vector of (sum_i x_i^2)^k * q_C over MonomialBasis(n, 4+2k),
/// where q_C = sum_i C_ii x_i^4 + sum_{i<j} 2 C_ij x_i^2 x_j^2.
std::vector<QSqrt2> expand_target(const ExactSymMatrix& c, int k);

/// A self-contained sum-of-squares claim: Gram matrix (or a cosine/sine
/// pair), basis description, and the exact target it must expand to.
struct GramCertificate {
  enum class Kind { Trig, Poly };
  Kind kind = Kind::Trig;

  // Trig form: target = vc^T gram vc (+ vs^T gram_sin vs when present)
  int m_prime = 0;
  ExactSymMatrix gram;
  std::optional<ExactSymMatrix> gram_sin;
  TrigPoly trig_target;

  // Poly form: target = w^T gram w over `basis`
  MonomialBasis basis;
  std::vector<QSqrt2> poly_target;
};

/// True iff the Gram expansion reproduces the target exactly and every Gram
/// block passes is_psd_exact. The final gate for every certificate.
bool verify_sos_identity(const GramCertificate& cert, std::string* why = nullptr);

}  // namespace excone
