#include <doctest.h>

#include <cmath>
#include <map>

#include "excone/fixtures.hpp"
#include "excone/rng.hpp"
#include "excone/solver.hpp"
#include "excone/sos.hpp"

using namespace excone;

namespace {

Rat random_small_rat(RngStream& rng) {
  return Rat(long(rng.next_u64() % 11) - 5, 1 + long(rng.next_u64() % 6));
}

ExactSymMatrix random_sym(RngStream& rng, int n) {
  ExactSymMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m.set(i, j, QSqrt2(random_small_rat(rng)));
  return m;
}

// brute-force oracle: expand w^T G w by explicit polynomial multiplication
std::map<std::vector<int>, QSqrt2> brute_poly_expand(const ExactSymMatrix& g,
                                                     const MonomialBasis& basis) {
  std::map<std::vector<int>, QSqrt2> out;
  for (int i = 0; i < basis.size(); ++i) {
    for (int j = 0; j < basis.size(); ++j) {
      std::vector<int> mu(basis.vars());
      for (int v = 0; v < basis.vars(); ++v)
        mu[v] = basis.exponent(i)[v] + basis.exponent(j)[v];
      out[mu] += g.at(i, j);
    }
  }
  return out;
}

// brute-force oracle for (sum x^2)^k q_C
std::map<std::vector<int>, QSqrt2> brute_target(const ExactSymMatrix& c, int k) {
  const int n = c.size();
  std::map<std::vector<int>, QSqrt2> poly;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<int> e(n, 0);
      e[i] += 2;
      e[j] += 2;
      poly[e] += c.at(i, j);
    }
  for (int round = 0; round < k; ++round) {
    std::map<std::vector<int>, QSqrt2> next;
    for (const auto& [e, coef] : poly)
      for (int v = 0; v < n; ++v) {
        std::vector<int> e2 = e;
        e2[v] += 2;
        next[e2] += coef;
      }
    poly = std::move(next);
  }
  return poly;
}

}  // namespace

TEST_CASE("MonomialBasis ordering and size") {
  const MonomialBasis b(3, 2);
  CHECK(b.size() == 6);  // C(3+2-1, 2)
  CHECK(b.exponent(0) == std::vector<int>{2, 0, 0});
  CHECK(b.exponent(1) == std::vector<int>{1, 1, 0});
  CHECK(b.exponent(5) == std::vector<int>{0, 0, 2});
  CHECK(b.index_of({1, 0, 1}) == 2);
  CHECK(b.index_of({3, 0, 0}) == -1);
}

TEST_CASE("trig_gram_expand on tiny Grams") {
  {
    ExactSymMatrix g(1);
    g.set(0, 0, QSqrt2(1));  // the constant 1 squared
    const TrigPoly t = trig_gram_expand(g);
    CHECK(t.coeff(0) == QSqrt2(1));
  }
  {
    // 1 + cos^2 = 3/2 + (1/2) cos(4 pi x)
    const TrigPoly t = trig_gram_expand(ExactSymMatrix::identity(2));
    CHECK(t.coeff(0) == QSqrt2(Rat(3, 2)));
    CHECK(t.coeff(1) == QSqrt2(0));
    CHECK(t.coeff(2) == QSqrt2(Rat(1, 2)));
  }
}

TEST_CASE("sine_gram_expand on tiny Grams") {
  // sin^2(2 pi x) = 1/2 - 1/2 cos(4 pi x)
  ExactSymMatrix g(1);
  g.set(0, 0, QSqrt2(1));
  const TrigPoly t = sine_gram_expand(g);
  CHECK(t.coeff(0) == QSqrt2(Rat(1, 2)));
  CHECK(t.coeff(2) == QSqrt2(Rat(-1, 2)));
}

// The published Gram expands exactly to the halved oscillating part
// (1, a_1, ..., a_6), not to the full coefficient vector (1, 2a_1, ...).
// Both facts are frozen here as regressions on the published data.
TEST_CASE("bundled Gram certifies the halved coefficient vector exactly") {
  const TrigPoly expanded = trig_gram_expand(fixtures::seed_gram());
  const FourierCoeffs a = fixtures::seed_coeffs();
  CHECK(expanded.coeff(0) == QSqrt2(1));
  for (int k = 1; k <= 6; ++k) CHECK(expanded.coeff(k) == a.coeff(k));

  GramCertificate halved;
  halved.kind = GramCertificate::Kind::Trig;
  halved.m_prime = 3;
  halved.gram = fixtures::seed_gram();
  halved.trig_target = expanded;
  CHECK(verify_sos_identity(halved));

  GramCertificate full;
  full.kind = GramCertificate::Kind::Trig;
  full.m_prime = 3;
  full.gram = fixtures::seed_gram();
  full.trig_target = TrigPoly::from_coeffs(a);
  std::string why;
  CHECK_FALSE(verify_sos_identity(full, &why));
  CHECK(why == "trig expansion does not match target");
}

TEST_CASE("verify_sos_identity rejects broken certificates") {
  GramCertificate cert;
  cert.kind = GramCertificate::Kind::Trig;
  cert.m_prime = 3;
  cert.gram = fixtures::seed_gram();
  cert.trig_target = trig_gram_expand(cert.gram);
  REQUIRE(verify_sos_identity(cert));

  GramCertificate broken_identity = cert;
  broken_identity.gram.set(0, 0, QSqrt2(Rat(1, 2)));
  CHECK_FALSE(verify_sos_identity(broken_identity));

  GramCertificate broken_psd = cert;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) broken_psd.gram.set(i, j, -cert.gram.at(i, j));
  broken_psd.trig_target = trig_gram_expand(broken_psd.gram);
  std::string why;
  CHECK_FALSE(verify_sos_identity(broken_psd, &why));
  CHECK(why == "cosine Gram is not PSD");
}

TEST_CASE("poly_gram_expand small cases and brute-force oracle") {
  {
    ExactSymMatrix g(1);
    g.set(0, 0, QSqrt2(1));
    const MonomialBasis b(1, 1);
    const auto coeffs = poly_gram_expand(g, b);  // x^2
    REQUIRE(coeffs.size() == 1);
    CHECK(coeffs[0] == QSqrt2(1));
  }
  {
    const MonomialBasis b(2, 1);
    const auto coeffs = poly_gram_expand(ExactSymMatrix::identity(2), b);  // x^2 + y^2
    const MonomialBasis out(2, 2);
    CHECK(coeffs[out.index_of({2, 0})] == QSqrt2(1));
    CHECK(coeffs[out.index_of({1, 1})] == QSqrt2(0));
    CHECK(coeffs[out.index_of({0, 2})] == QSqrt2(1));
  }
  RngStream rng(8);
  for (int it = 0; it < 10; ++it) {
    const MonomialBasis b(3, 2);
    const ExactSymMatrix g = random_sym(rng, b.size());
    const auto fast = poly_gram_expand(g, b);
    const auto slow = brute_poly_expand(g, b);
    const MonomialBasis out(3, 4);
    for (const auto& [mu, coef] : slow) CHECK(fast[out.index_of(mu)] == coef);
  }
}

TEST_CASE("expand_target small cases and brute-force oracle") {
  {
    const auto t = expand_target(ExactSymMatrix::identity(2), 0);  // x^4 + y^4
    const MonomialBasis out(2, 4);
    CHECK(t[out.index_of({4, 0})] == QSqrt2(1));
    CHECK(t[out.index_of({2, 2})] == QSqrt2(0));
    CHECK(t[out.index_of({0, 4})] == QSqrt2(1));
  }
  {
    const auto t = expand_target(ExactSymMatrix::identity(2), 1);
    const MonomialBasis out(2, 6);
    CHECK(t[out.index_of({6, 0})] == QSqrt2(1));
    CHECK(t[out.index_of({4, 2})] == QSqrt2(1));
    CHECK(t[out.index_of({2, 4})] == QSqrt2(1));
    CHECK(t[out.index_of({0, 6})] == QSqrt2(1));
  }
  {
    const ExactSymMatrix h = horn_matrix();
    const auto fast = expand_target(h, 1);
    const auto slow = brute_target(h, 1);
    const MonomialBasis out(5, 6);
    QSqrt2 checked;
    for (const auto& [mu, coef] : slow) CHECK(fast[out.index_of(mu)] == coef);
  }
}

TEST_CASE("expansion maps are linear") {
  RngStream rng(9);
  const MonomialBasis b(3, 2);
  for (int it = 0; it < 20; ++it) {
    const ExactSymMatrix g1 = random_sym(rng, b.size()), g2 = random_sym(rng, b.size());
    const QSqrt2 alpha(random_small_rat(rng)), beta(random_small_rat(rng));
    ExactSymMatrix combo(b.size());
    for (int i = 0; i < b.size(); ++i)
      for (int j = i; j < b.size(); ++j)
        combo.set(i, j, alpha * g1.at(i, j) + beta * g2.at(i, j));
    const auto e1 = poly_gram_expand(g1, b), e2 = poly_gram_expand(g2, b),
               ec = poly_gram_expand(combo, b);
    for (std::size_t i = 0; i < ec.size(); ++i)
      CHECK(ec[i] == alpha * e1[i] + beta * e2[i]);

    const ExactSymMatrix t1 = random_sym(rng, 4), t2 = random_sym(rng, 4);
    ExactSymMatrix tc(4);
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) tc.set(i, j, alpha * t1.at(i, j) + beta * t2.at(i, j));
    const TrigPoly f1 = trig_gram_expand(t1), f2 = trig_gram_expand(t2),
                   fc = trig_gram_expand(tc);
    for (int k = 0; k <= fc.max_freq(); ++k)
      CHECK(fc.coeff(k) == alpha * f1.coeff(k) + beta * f2.coeff(k));
  }
}

TEST_CASE("solver rows are the adjoint of the expansion maps") {
  // <expand(G), y> == <svec(G), A^T y> for the Gram-side coefficients of the
  // SOS feasibility rows
  RngStream rng(10);
  const int n = 3, d = 2;
  const MonomialBasis b(n, d);
  const MonomialBasis out(n, 2 * d);
  const std::vector<QSqrt2> target(out.size(), QSqrt2(0));
  const ConicProblem prob = build_poly_sos_problem(target, n, d);
  for (int it = 0; it < 10; ++it) {
    const ExactSymMatrix g = random_sym(rng, b.size());
    const auto expanded = poly_gram_expand(g, b);
    std::vector<QSqrt2> y(out.size());
    for (auto& v : y) v = QSqrt2(random_small_rat(rng));
    QSqrt2 lhs;
    for (int i = 0; i < out.size(); ++i) lhs += expanded[i] * y[i];
    // A^T y against svec(G)
    const auto coords = svec_exact(g);
    QSqrt2 rhs;
    for (int r = 0; r < prob.num_rows(); ++r)
      for (const auto& [idx, coef] : prob.rows[r].terms) rhs += coef * coords[idx] * y[r];
    CHECK(lhs == rhs);
  }
}

TEST_CASE("trig expansion matches quadrature of the squared polynomial") {
  RngStream rng(11);
  for (int it = 0; it < 5; ++it) {
    const ExactSymMatrix g = random_sym(rng, 4);
    const TrigPoly t = trig_gram_expand(g);
    // numeric Fourier coefficients of v^T G v via Simpson, 8192 panels
    auto vgv = [&](double x) {
      double v[4];
      for (int k = 0; k < 4; ++k) v[k] = k == 0 ? 1.0 : std::cos(2.0 * k * M_PI * x);
      double acc = 0.0;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) acc += g.at(i, j).to_double() * v[i] * v[j];
      return acc;
    };
    for (int freq = 0; freq <= t.max_freq(); ++freq) {
      const int panels = 8192;
      const double h = 1.0 / panels;
      double acc = 0.0;
      for (int i = 0; i <= panels; ++i) {
        const double x = i * h;
        const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += w * vgv(x) * std::cos(2.0 * freq * M_PI * x);
      }
      acc *= h / 3.0 * (freq == 0 ? 1.0 : 2.0);
      CHECK(std::abs(acc - t.coeff(freq).to_double()) < 1e-10);
    }
  }
}
