#pragma once

#include <optional>
#include <string>
#include <vector>

#include "excone/fourier.hpp"
#include "excone/sos.hpp"

namespace excone {

/// A self-contained, exactly re-verifiable claim bundle.
///
/// kind "e-DNN": `matrix` is the n x n compression of the coefficient
/// vector `coeffs`; the claim is that it is doubly nonnegative and not
/// completely positive (pairing = <A5, H> < 0 through the leading 5x5
/// principal submatrix). When the cosine/sine Grams are present they certify
/// f >= 0 on [0,1], which makes every compression of any size PSD
/// (scope "all"); otherwise only the bundled matrix itself is certified.
///
/// kind "e-COP": `matrix` is a copositive C certified by the polynomial Gram
/// of (sum x_i^2)^k q_C, and `base_matrix` is a doubly nonnegative witness
/// with pairing = <C, base> < 0, so C is not a sum of a PSD and a
/// nonnegative matrix.
struct Certificate {
  std::string kind;  // "e-DNN" | "e-COP"
  int n = 5;

  FourierCoeffs coeffs;    // e-DNN (and provenance of e-COP bases)
  ExactSymMatrix matrix;   // A^(n) or C
  QSqrt2 pairing;          // <A5,H> or <C, base>

  // e-DNN scope: "all" | "n<=<N>" | "n=5"
  std::string psd_scope = "n=5";
  std::optional<ExactSymMatrix> gram_cos;
  std::optional<ExactSymMatrix> gram_sin;

  // e-COP payload
  int k = 1;
  std::optional<ExactSymMatrix> gram_poly;
  std::optional<ExactSymMatrix> base_matrix;
  std::optional<FourierCoeffs> base_coeffs;

  // provenance
  std::string tool_version;
  std::string config_summary;

  std::string to_json() const;
  static Certificate from_json(const std::string& text);
};

struct CertificateCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CertificateCheck> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return !checks.empty();
  }
};

/// Re-runs every exact check appropriate to the certificate kind, from the
/// in-memory data alone.
VerifyReport verify_certificate(const Certificate& c);

}  // namespace excone
