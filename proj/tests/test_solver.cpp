#include <doctest.h>

#include <nlohmann/json.hpp>

#include "excone/fixtures.hpp"
#include "excone/rng.hpp"
#include "excone/solver.hpp"

using namespace excone;

TEST_CASE("svec round-trips and is an isometry") {
  RngStream rng(3);
  ExactSymMatrix m(4);
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j)
      m.set(i, j, QSqrt2(Rat(long(rng.next_u64() % 13) - 6, 1 + long(rng.next_u64() % 5))));
  const auto coords = svec_exact(m);
  CHECK(unsvec_exact(4, coords.data()) == m);
  // <svec(A), svec(B)> = <A, B>
  QSqrt2 dot;
  for (const auto& c : coords) dot += c * c;
  CHECK(dot == frobenius_exact(m, m));
}

TEST_CASE("trivial LP feasibility") {
  ConicProblem p;
  p.layout.add(BlockKind::Nonneg, 1, "x");
  ConicProblem::Row r;
  r.terms = {{0, QSqrt2(1)}};
  r.rhs = QSqrt2(1);
  p.add_row(r);
  const auto sol = solve(p);
  CHECK(sol.status == SolveStatus::Feasible);
  CHECK(sol.x[0] == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("trivial LP infeasibility evidence") {
  ConicProblem p;
  p.layout.add(BlockKind::Nonneg, 1, "x");
  ConicProblem::Row r;
  r.terms = {{0, QSqrt2(1)}};
  r.rhs = QSqrt2(-1);
  p.add_row(r);
  const auto sol = solve(p);
  CHECK(sol.status == SolveStatus::InfeasibleEvidence);
  CHECK(sol.feasibility_margin == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("max-margin embedding finds the most interior PSD completion") {
  // X psd with X11 = X22 = 1: the margin-maximal point is the identity
  ConicProblem p;
  p.layout.add(BlockKind::Psd, 2, "X");
  for (int i = 0; i < 2; ++i) {
    ConicProblem::Row r;
    r.terms = {{svec_index(i, i, 2), QSqrt2(1)}};
    r.rhs = QSqrt2(1);
    p.add_row(r);
  }
  const auto sol = solve(p);
  CHECK(sol.status == SolveStatus::Feasible);
  CHECK(sol.feasibility_margin == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(std::abs(sol.x[1]) < 1e-6);  // off-diagonal svec coordinate
}

TEST_CASE("seed problem shape at the published parameters") {
  const ConicProblem p = build_seed_problem(Rat(1, 20), 6, 3, SeedMode::SosCos);
  CHECK(p.num_vars() == 6 + 10);  // a plus the upper triangle of B
  CHECK(p.num_rows() == 8);       // 7 coefficient rows + the pairing row
  CHECK_THROWS(build_seed_problem(Rat(1, 20), 6, 7, SeedMode::SosCos));
}

TEST_CASE("seed problem feasibility landscape") {
  // statuses recorded as regression fixtures; the cosine-only certificate
  // form admits no point at these parameters, the direct PSD form does
  struct Case {
    SeedMode mode;
    int m, mp;
    Rat eps;
    SolveStatus expect;
  };
  const Case cases[] = {
      {SeedMode::Psd5, 6, 3, Rat(1, 20), SolveStatus::Feasible},
      {SeedMode::SosCos, 6, 1, Rat(1, 20), SolveStatus::InfeasibleEvidence},
      {SeedMode::SosCos, 6, 2, Rat(1, 20), SolveStatus::InfeasibleEvidence},
      {SeedMode::SosCos, 6, 3, Rat(1, 20), SolveStatus::InfeasibleEvidence},
      {SeedMode::SosFull, 6, 3, Rat(1, 20), SolveStatus::InfeasibleEvidence},
      {SeedMode::SosFull, 10, 5, Rat(1, 20), SolveStatus::Feasible},
      {SeedMode::Psd5, 6, 3, Rat(10, 1), SolveStatus::InfeasibleEvidence},
  };
  for (const auto& c : cases) {
    const auto sol = solve(build_seed_problem(c.eps, c.m, c.mp, c.mode));
    CHECK(sol.status == c.expect);
  }
}

TEST_CASE("seed problem with eps = 0 still needs a nonzero coefficient vector") {
  // a = 0 gives <I5, H> = 5, so the pairing row forces a nonzero point
  const auto sol = solve(build_seed_problem(Rat(0), 6, 3, SeedMode::Psd5));
  CHECK(sol.status == SolveStatus::Feasible);
  double norm = 0.0;
  for (int i = 0; i < 6; ++i) norm += std::abs(sol.x[i]);
  CHECK(norm > 0.1);
}

TEST_CASE("feasible solutions satisfy the rows and cone margins independently") {
  for (const SeedMode mode : {SeedMode::Psd5, SeedMode::PsdFamily}) {
    const ConicProblem p = build_seed_problem(Rat(1, 20), 6, 3, mode, 8);
    const auto sol = solve(p);
    if (sol.status != SolveStatus::Feasible) continue;
    const auto chk = check_solution(p, sol.x);
    CHECK(chk.equality_residual < 1e-7);
    CHECK(chk.min_cone_margin > 0.0);
  }
}

TEST_CASE("solver is deterministic") {
  const ConicProblem p = build_seed_problem(Rat(1, 20), 6, 3, SeedMode::Psd5);
  const auto s1 = solve(p);
  const auto s2 = solve(p);
  REQUIRE(s1.x.size() == s2.x.size());
  for (int i = 0; i < s1.x.size(); ++i) CHECK(s1.x[i] == s2.x[i]);
}

TEST_CASE("feasibility status is invariant under positive scaling of the data") {
  for (long scale : {1L, 3L}) {
    ConicProblem p;
    p.layout.add(BlockKind::Nonneg, 2, "x");
    ConicProblem::Row r;
    r.terms = {{0, QSqrt2(scale)}, {1, QSqrt2(scale)}};
    r.rhs = QSqrt2(Rat(2 * scale));
    p.add_row(r);
    CHECK(solve(p).status == SolveStatus::Feasible);

    ConicProblem q;
    q.layout.add(BlockKind::Nonneg, 1, "x");
    ConicProblem::Row r2;
    r2.terms = {{0, QSqrt2(scale)}};
    r2.rhs = QSqrt2(Rat(-scale));
    q.add_row(r2);
    CHECK(solve(q).status == SolveStatus::InfeasibleEvidence);
  }
}

TEST_CASE("ecop problem shape") {
  const ConicProblem p = build_ecop_problem(fixtures::seed_matrix(), 1, Rat(1, 10));
  CHECK(p.layout.blocks.size() == 2);
  CHECK(p.layout.blocks[0].kind == BlockKind::Free);
  CHECK(p.layout.blocks[0].dim() == 15);
  CHECK(p.layout.blocks[1].kind == BlockKind::Psd);
  CHECK(p.layout.blocks[1].size == 35);
  CHECK(p.num_rows() == 210 + 1);
  CHECK_THROWS(build_ecop_problem(fixtures::seed_matrix(), 3, Rat(1, 10)));
}

TEST_CASE("free variables are handled natively") {
  // minimize nothing: t free with t = 5 exactly, plus a cone block
  ConicProblem p;
  p.layout.add(BlockKind::Free, 1, "t");
  p.layout.add(BlockKind::Nonneg, 1, "u");
  ConicProblem::Row r;
  r.terms = {{0, QSqrt2(1)}};
  r.rhs = QSqrt2(5);
  p.add_row(r);
  ConicProblem::Row r2;
  r2.terms = {{0, QSqrt2(1)}, {1, QSqrt2(1)}};
  r2.rhs = QSqrt2(7);
  p.add_row(r2);
  const auto sol = solve(p);
  CHECK(sol.status == SolveStatus::Feasible);
  CHECK(sol.x[0] == doctest::Approx(5.0).epsilon(1e-7));
  CHECK(sol.x[1] == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("problem serialization carries blocks and dense rows") {
  const ConicProblem p = build_seed_problem(Rat(1, 20), 6, 3, SeedMode::SosCos);
  const auto j = nlohmann::json::parse(p.to_json());
  CHECK(j.at("blocks").size() == 2);
  CHECK(j.at("rows").size() == 8);
  CHECK(j.at("rows").at(0).at("a").size() == 16);
}

TEST_CASE("spn problem equalities encode the split exactly") {
  SymMatrix a(2);
  a.set(0, 0, 1.0);
  a.set(0, 1, -0.25);
  a.set(1, 1, 0.5);
  const ConicProblem p = build_spn_problem(a);
  CHECK(p.num_rows() == 3);
  const auto sol = solve(p);
  CHECK(sol.status == SolveStatus::Feasible);  // a is PSD here
  const auto chk = check_solution(p, sol.x);
  CHECK(chk.equality_residual < 1e-7);
}
