#include "excone/certificate.hpp"

#include <nlohmann/json.hpp>
#include <stdexcept>

#include "excone/cones.hpp"

namespace excone {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json matrix_to_json(const ExactSymMatrix& m) {
  ordered_json j;
  j["n"] = m.size();
  ordered_json upper = ordered_json::array();
  for (const auto& v : m.upper()) upper.push_back(v.str());
  j["upper"] = upper;
  return j;
}

ExactSymMatrix matrix_from_json(const ordered_json& j) {
  const int n = j.at("n").get<int>();
  std::vector<QSqrt2> upper;
  for (const auto& s : j.at("upper")) upper.push_back(QSqrt2::parse(s.get<std::string>()));
  return ExactSymMatrix::from_upper(n, std::move(upper));
}

ordered_json coeffs_to_json(const FourierCoeffs& f) {
  ordered_json arr = ordered_json::array();
  for (const auto& a : f.a) arr.push_back(a.str());
  return arr;
}

FourierCoeffs coeffs_from_json(const ordered_json& j) {
  FourierCoeffs f;
  for (const auto& s : j) f.a.push_back(QSqrt2::parse(s.get<std::string>()));
  return f;
}

}  // namespace

std::string Certificate::to_json() const {
  ordered_json j;
  j["format"] = "excone-certificate/1";
  j["kind"] = kind;
  if (!tool_version.empty()) j["version"] = tool_version;
  if (!config_summary.empty()) j["config"] = config_summary;
  j["n"] = n;
  j["pairing"] = pairing.str();
  if (kind == "e-DNN") {
    j["psd_scope"] = psd_scope;
    j["coeffs"] = coeffs_to_json(coeffs);
    j["matrix"] = matrix_to_json(matrix);
    if (gram_cos) j["gram_cos"] = matrix_to_json(*gram_cos);
    if (gram_sin) j["gram_sin"] = matrix_to_json(*gram_sin);
  } else {
    j["k"] = k;
    j["matrix"] = matrix_to_json(matrix);
    if (gram_poly) j["gram"] = matrix_to_json(*gram_poly);
    if (base_matrix) j["base_matrix"] = matrix_to_json(*base_matrix);
    if (base_coeffs) j["base_coeffs"] = coeffs_to_json(*base_coeffs);
  }
  return j.dump(1);
}

Certificate Certificate::from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  if (j.value("format", "") != "excone-certificate/1")
    throw std::runtime_error("certificate: unknown format tag");
  Certificate c;
  c.kind = j.at("kind").get<std::string>();
  c.n = j.at("n").get<int>();
  c.pairing = QSqrt2::parse(j.at("pairing").get<std::string>());
  c.tool_version = j.value("version", "");
  c.config_summary = j.value("config", "");
  if (c.kind == "e-DNN") {
    c.psd_scope = j.value("psd_scope", "n=5");
    c.coeffs = coeffs_from_json(j.at("coeffs"));
    c.matrix = matrix_from_json(j.at("matrix"));
    if (j.contains("gram_cos")) c.gram_cos = matrix_from_json(j["gram_cos"]);
    if (j.contains("gram_sin")) c.gram_sin = matrix_from_json(j["gram_sin"]);
  } else if (c.kind == "e-COP") {
    c.k = j.at("k").get<int>();
    c.matrix = matrix_from_json(j.at("matrix"));
    if (j.contains("gram")) c.gram_poly = matrix_from_json(j["gram"]);
    if (j.contains("base_matrix")) c.base_matrix = matrix_from_json(j["base_matrix"]);
    if (j.contains("base_coeffs")) c.base_coeffs = coeffs_from_json(j["base_coeffs"]);
  } else {
    throw std::runtime_error("certificate: unknown kind '" + c.kind + "'");
  }
  return c;
}

VerifyReport verify_certificate(const Certificate& c) {
  VerifyReport rep;
  auto add = [&](const std::string& name, bool pass, std::string detail = {}) {
    rep.checks.push_back({name, pass, std::move(detail)});
  };

  if (c.kind == "e-DNN") {
    add("coeffs-nonnegative", c.coeffs.all_nonnegative());
    bool matches = false;
    try {
      matches = (c.matrix == compression(c.coeffs, c.n));
    } catch (const std::exception&) {
    }
    add("matrix-matches-coefficients", matches);
    add("matrix-nonnegative-exact", is_nn(c.matrix).verdict == Verdict::In);
    add("matrix-psd-exact", is_psd_exact(c.matrix).psd);
    if (c.matrix.size() >= 5) {
      const QSqrt2 pair = frobenius_exact(c.matrix.leading(5), horn_matrix());
      add("horn-pairing-value", pair == c.pairing, pair.str());
      add("horn-pairing-negative", sign_of(pair) < 0);
    } else {
      add("horn-pairing-value", false, "matrix smaller than 5x5");
    }
    if (c.gram_cos) {
      GramCertificate g;
      g.kind = GramCertificate::Kind::Trig;
      g.m_prime = c.gram_cos->size() - 1;
      g.gram = *c.gram_cos;
      g.gram_sin = c.gram_sin;
      g.trig_target = TrigPoly::from_coeffs(c.coeffs);
      std::string why;
      const bool ok = verify_sos_identity(g, &why);
      add("sos-identity-for-f", ok, why);
      add("scope-consistent", c.psd_scope == "all" ? ok : true);
    } else if (c.psd_scope.rfind("n<=", 0) == 0) {
      // finite-family scope: the compression at the stated size must be PSD,
      // which covers every smaller size through principal submatrices
      bool ok = false;
      std::string detail;
      try {
        const int top = std::stoi(c.psd_scope.substr(3));
        ok = top >= c.n && is_psd_exact(compression(c.coeffs, top)).psd;
      } catch (const std::exception& e) {
        detail = e.what();
      }
      add("scope-consistent", ok, detail);
    } else {
      add("scope-consistent", c.psd_scope != "all",
          c.psd_scope == "all" ? "scope 'all' requires the Gram pair" : "");
    }
    return rep;
  }

  if (c.kind == "e-COP") {
    if (!c.gram_poly || !c.base_matrix) {
      add("payload-complete", false, "missing Gram or base matrix");
      return rep;
    }
    const int n = c.matrix.size();
    GramCertificate g;
    g.kind = GramCertificate::Kind::Poly;
    g.basis = MonomialBasis(n, 2 + c.k);
    g.gram = *c.gram_poly;
    g.poly_target = expand_target(c.matrix, c.k);
    std::string why;
    add("sos-multiplier-identity", verify_sos_identity(g, &why), why);
    add("base-psd-exact", is_psd_exact(*c.base_matrix).psd);
    add("base-nonnegative-exact", is_nn(*c.base_matrix).verdict == Verdict::In);
    if (c.base_coeffs) {
      bool matches = false;
      try {
        matches = (*c.base_matrix == compression(*c.base_coeffs, c.base_matrix->size()));
      } catch (const std::exception&) {
      }
      add("base-matches-coefficients", matches);
    }
    bool pair_ok = false;
    std::string pair_detail;
    try {
      const QSqrt2 pair = frobenius_exact(c.matrix, *c.base_matrix);
      pair_ok = (pair == c.pairing) && sign_of(pair) < 0;
      pair_detail = pair.str();
    } catch (const std::exception& e) {
      pair_detail = e.what();
    }
    add("dnn-pairing-negative", pair_ok, pair_detail);
    return rep;
  }

  rep.checks.push_back({"kind-known", false, "unknown certificate kind"});
  return rep;
}

}  // namespace excone
