#include <doctest.h>

#include <cmath>

#include "excone/fixtures.hpp"
#include "excone/rationalize.hpp"
#include "excone/rng.hpp"

using namespace excone;

TEST_CASE("round_rational basics") {
  RoundingSpec spec;
  spec.denominator_bound = 10;
  CHECK(round_rational(0.5, spec) == Rat(1, 2));
  CHECK(round_rational(0.33333333, spec) == Rat(1, 3));
  CHECK(round_rational(-0.2, spec) == Rat(-1, 5));
  spec.denominator_bound = 1;
  CHECK(round_rational(2.7, spec) == Rat(3));
}

TEST_CASE("round_rational is the best approximation under the bound") {
  // brute-force oracle over all denominators <= bound
  RngStream rng(13);
  RoundingSpec spec;
  spec.denominator_bound = 25;
  for (int it = 0; it < 300; ++it) {
    const double x = 4.0 * rng.next_uniform() - 2.0;
    const Rat r = round_rational(x, spec);
    CHECK(r.den() <= 25);
    const double err = std::abs(x - r.to_double());
    for (long den = 1; den <= 25; ++den) {
      const long num = std::llround(x * double(den));
      const double cand_err = std::abs(x - double(num) / double(den));
      CHECK(err <= cand_err + 1e-15);
    }
  }
}

TEST_CASE("round_scalar recovers sqrt2 multiples") {
  RoundingSpec spec;
  spec.denominator_bound = 200;
  spec.allow_sqrt2 = true;
  const double x = 16.0 * std::sqrt(2.0) / 27.0;
  const QSqrt2 r = round_scalar(x, spec);
  CHECK(r == QSqrt2(Rat(0), Rat(16, 27)));  // exact forward evaluation oracle
  // without the sqrt2 component the error is visible
  spec.allow_sqrt2 = false;
  const QSqrt2 plain = round_scalar(x, spec);
  CHECK(std::abs(plain.to_double() - x) > 1e-7);
}

TEST_CASE("round_point respects the svec convention") {
  ConicProblem p;
  p.layout.add(BlockKind::Psd, 2, "X");
  Eigen::VectorXd x(3);
  const double r2 = std::sqrt(2.0);
  x << 1.0, 0.25 * r2, 0.5;  // matrix entries 1, 1/4, 1/2
  RoundingSpec spec;
  spec.denominator_bound = 100;
  const auto rounded = round_point(x, p, spec);
  CHECK(rounded[0] == QSqrt2(1));
  CHECK(rounded[1] == QSqrt2(Rat(0), Rat(1, 4)));  // sqrt2 * (1/4)
  CHECK(rounded[2] == QSqrt2(Rat(1, 2)));
}

TEST_CASE("project_and_certify is the identity on exact feasible points") {
  // seed problem, exact feasible point from the bundled coefficient vector:
  // a = bundled a, compression block = bundled matrix
  const ConicProblem p = build_seed_problem(Rat(1, 20), 6, 3, SeedMode::Psd5);
  std::vector<QSqrt2> candidate(p.num_vars());
  const FourierCoeffs a = fixtures::seed_coeffs();
  for (int k = 0; k < 6; ++k) candidate[k] = a.a[k];
  const auto coords = svec_exact(fixtures::seed_matrix());
  for (std::size_t i = 0; i < coords.size(); ++i) candidate[6 + i] = coords[i];
  const auto res = project_and_certify(candidate, p);
  REQUIRE(res.ok);
  CHECK(res.correction_norm == 0.0);
  for (int i = 0; i < p.num_vars(); ++i) CHECK(res.x[i] == candidate[i]);
}

TEST_CASE("project_and_certify repairs small perturbations exactly") {
  const ConicProblem p = build_seed_problem(Rat(1, 20), 6, 3, SeedMode::Psd5);
  std::vector<QSqrt2> candidate(p.num_vars());
  const FourierCoeffs a = fixtures::seed_coeffs();
  for (int k = 0; k < 6; ++k) candidate[k] = a.a[k];
  const auto coords = svec_exact(fixtures::seed_matrix());
  for (std::size_t i = 0; i < coords.size(); ++i) candidate[6 + i] = coords[i];
  candidate[0] += QSqrt2(Rat(1, 100000000));  // breaks four equalities
  const auto res = project_and_certify(candidate, p);
  REQUIRE(res.ok);
  CHECK(res.correction_norm > 0.0);
  for (const auto& r : p.residual_exact(res.x)) CHECK(r.is_zero());
}

TEST_CASE("project_and_certify reports the failing cone check") {
  // single 1x1 PSD block pinned to a negative value
  ConicProblem p;
  p.layout.add(BlockKind::Psd, 1, "X");
  ConicProblem::Row r;
  r.terms = {{0, QSqrt2(1)}};
  r.rhs = QSqrt2(-1);
  p.add_row(r);
  const auto res = project_and_certify({QSqrt2(-1)}, p);
  CHECK_FALSE(res.ok);
  CHECK(res.failure == "cone check failed: X, PSD");

  ConicProblem q;
  q.layout.add(BlockKind::Nonneg, 1, "a");
  ConicProblem::Row r2;
  r2.terms = {{0, QSqrt2(1)}};
  r2.rhs = QSqrt2(-2);
  q.add_row(r2);
  const auto res2 = project_and_certify({QSqrt2(-2)}, q);
  CHECK_FALSE(res2.ok);
  CHECK(res2.failure == "cone check failed: a, coordinate 0");
}

TEST_CASE("certification succeeds monotonically in the denominator bound") {
  const ConicProblem p = build_seed_problem(Rat(1, 20), 6, 3, SeedMode::Psd5);
  const auto sol = solve(p);
  REQUIRE(sol.status == SolveStatus::Feasible);
  bool succeeded_before = false;
  for (long bound : {1000L, 10000L, 100000L, 1000000L, 10000000L}) {
    RoundingSpec spec;
    spec.denominator_bound = bound;
    const auto res = project_and_certify(round_point(sol.x, p, spec), p);
    if (succeeded_before) CHECK(res.ok);
    if (res.ok) succeeded_before = true;
  }
  CHECK(succeeded_before);
}
