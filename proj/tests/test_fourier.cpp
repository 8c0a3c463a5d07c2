#include <doctest.h>

#include <cmath>

#include "excone/fixtures.hpp"
#include "excone/fourier.hpp"
#include "excone/rng.hpp"

using namespace excone;

namespace {

// composite-Simpson oracle for int_0^1 g(x) dx
template <typename F>
double simpson(F&& g, int panels = 4096) {
  const double h = 1.0 / panels;
  double acc = g(0.0) + g(1.0);
  for (int i = 1; i < panels; ++i) acc += g(i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

double basis_fn(int k, double x) {
  return k == 0 ? 1.0 : std::sqrt(2.0) * std::cos(2.0 * k * M_PI * x);
}

double f_eval(const FourierCoeffs& f, double x) {
  double acc = 1.0;
  for (int k = 1; k <= f.m(); ++k)
    acc += 2.0 * f.a[k - 1].to_double() * std::cos(2.0 * k * M_PI * x);
  return acc;
}

Rat random_small_rat(RngStream& rng) {
  return Rat(long(rng.next_u64() % 11) - 5, 1 + long(rng.next_u64() % 6));
}

}  // namespace

TEST_CASE("cos_product_integral case table") {
  CHECK(cos_product_integral(1, 0, 1) == Rat(1, 2));
  CHECK(cos_product_integral(2, 1, 1) == Rat(1, 4));
  CHECK(cos_product_integral(1, 1, 1) == Rat(0));
  CHECK(cos_product_integral(0, 0, 0) == Rat(1));
  CHECK(cos_product_integral(3, 2, 5) == Rat(1, 4));
  CHECK(cos_product_integral(4, 0, 3) == Rat(0));
}

TEST_CASE("cos_product_integral is fully symmetric and matches quadrature") {
  RngStream rng(12);
  for (int it = 0; it < 120; ++it) {
    const int j = int(rng.next_u64() % 7), k = int(rng.next_u64() % 7),
              l = int(rng.next_u64() % 7);
    const Rat v = cos_product_integral(j, k, l);
    CHECK(v == cos_product_integral(k, j, l));
    CHECK(v == cos_product_integral(l, k, j));
    CHECK(v == cos_product_integral(j, l, k));
    const double q = simpson([&](double x) {
      return std::cos(2 * j * M_PI * x) * std::cos(2 * k * M_PI * x) *
             std::cos(2 * l * M_PI * x);
    });
    CHECK(std::abs(v.to_double() - q) < 1e-10);
  }
}

TEST_CASE("compression of the constant function is the identity") {
  FourierCoeffs f;
  f.a.assign(4, QSqrt2(0));
  for (int n : {1, 2, 5, 8}) CHECK(compression(f, n) == ExactSymMatrix::identity(n));
}

TEST_CASE("compression for a single coefficient matches the quadrature oracle") {
  FourierCoeffs f;
  f.a = {QSqrt2(1)};
  const ExactSymMatrix a = compression(f, 3);
  const QSqrt2 r2 = QSqrt2::sqrt2();
  CHECK(a.at(0, 0) == QSqrt2(1));
  CHECK(a.at(0, 1) == r2);
  CHECK(a.at(0, 2) == QSqrt2(0));
  CHECK(a.at(1, 1) == QSqrt2(1));
  CHECK(a.at(1, 2) == QSqrt2(1));
  CHECK(a.at(2, 2) == QSqrt2(1));
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      const double q = simpson(
          [&](double x) { return f_eval(f, x) * basis_fn(i, x) * basis_fn(j, x); });
      CHECK(std::abs(a.at(i, j).to_double() - q) < 1e-10);
    }
  }
}

TEST_CASE("compression of the bundled coefficients reproduces the bundled matrix") {
  CHECK(compression(fixtures::seed_coeffs(), 5) == fixtures::seed_matrix());
}

TEST_CASE("quadrature oracle over random rational coefficient vectors") {
  RngStream rng(77);
  for (int it = 0; it < 10; ++it) {
    FourierCoeffs f;
    const int m = 1 + int(rng.next_u64() % 6);
    for (int k = 0; k < m; ++k) f.a.push_back(QSqrt2(random_small_rat(rng)));
    const int n = 2 + int(rng.next_u64() % 7);
    const ExactSymMatrix a = compression(f, n);
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        const double q = simpson(
            [&](double x) { return f_eval(f, x) * basis_fn(i, x) * basis_fn(j, x); },
            8192);
        CHECK(std::abs(a.at(i, j).to_double() - q) < 1e-10);
      }
    }
  }
}

TEST_CASE("principal-submatrix bootstrap: leading 5x5 block is stable in n") {
  RngStream rng(123);
  for (int it = 0; it < 20; ++it) {
    FourierCoeffs f;
    for (int k = 0; k < 6; ++k) f.a.push_back(QSqrt2(random_small_rat(rng)));
    const ExactSymMatrix a5 = compression(f, 5);
    for (int n = 5; n <= 9; ++n) CHECK(compression(f, n).leading(5) == a5);
  }
}

TEST_CASE("compression is entrywise nonnegative iff all coefficients are") {
  RngStream rng(321);
  for (int it = 0; it < 60; ++it) {
    FourierCoeffs f;
    for (int k = 0; k < 5; ++k) {
      Rat r = random_small_rat(rng);
      if (it % 2 == 0 && r.sign() < 0) r = r * Rat(-1);  // half the runs all-nonneg
      f.a.push_back(QSqrt2(r));
    }
    const ExactSymMatrix a = compression(f, 7);
    bool entries_nonneg = true;
    for (int i = 0; i < 7 && entries_nonneg; ++i)
      for (int j = i; j < 7; ++j)
        if (sign_of(a.at(i, j)) < 0) {
          entries_nonneg = false;
          break;
        }
    CHECK(entries_nonneg == f.all_nonnegative());
  }
}

TEST_CASE("coeffs_from_seed inverts the 5x5 compression") {
  {
    FourierCoeffs f = coeffs_from_seed(ExactSymMatrix::identity(5));
    for (const auto& a : f.a) CHECK(a == QSqrt2(0));
  }
  {
    const FourierCoeffs f = coeffs_from_seed(fixtures::seed_matrix());
    const FourierCoeffs expect = fixtures::seed_coeffs();
    REQUIRE(f.m() == expect.m());
    for (int k = 0; k < 6; ++k) CHECK(f.a[k] == expect.a[k]);
  }
  RngStream rng(55);
  for (int it = 0; it < 50; ++it) {
    FourierCoeffs f;
    for (int k = 0; k < 6; ++k)
      f.a.push_back(QSqrt2(random_small_rat(rng), random_small_rat(rng)));
    const FourierCoeffs back = coeffs_from_seed(compression(f, 5));
    for (int k = 0; k < 6; ++k) CHECK(back.a[k] == f.a[k]);
  }
}

TEST_CASE("coeffs_from_seed rejects perturbed matrices naming the entry") {
  ExactSymMatrix a = fixtures::seed_matrix();
  a.set(1, 1, a.at(1, 1) + QSqrt2(Rat(1, 1000)));
  CHECK_THROWS_WITH_AS(coeffs_from_seed(a),
                       doctest::Contains("pattern mismatch"), std::runtime_error);
  CHECK_THROWS(coeffs_from_seed(ExactSymMatrix::identity(4)));
}
