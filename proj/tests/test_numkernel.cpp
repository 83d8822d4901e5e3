// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "opsys/conic.hpp"
#include "opsys/eig.hpp"
#include "opsys/feasibility.hpp"
#include "opsys/rng.hpp"

using namespace opsys;

namespace {
Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}
}  // namespace

TEST_CASE("eig_hermitian: identity and diagonal cases") {
  EigResult id3 = eig_hermitian(Matrix::Identity(3, 3));
  for (int k = 0; k < 3; ++k) CHECK(id3.values(k) == doctest::Approx(1.0));

  EigResult d = eig_hermitian(diag2(1.0, -1.0));
  CHECK(d.values(0) == doctest::Approx(-1.0));
  CHECK(d.values(1) == doctest::Approx(1.0));
}

TEST_CASE("eig_hermitian: hand-solved 2x2 symmetric off-diagonal") {
  // Characteristic polynomial of [[0,1],[1,0]] gives eigenvalues -1, 1 with
  // eigenvectors (1, -1)/sqrt(2) and (1, 1)/sqrt(2) up to phase.
  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  EigResult e = eig_hermitian(x);
  CHECK(e.values(0) == doctest::Approx(-1.0));
  CHECK(e.values(1) == doctest::Approx(1.0));
  const double s = 1.0 / std::sqrt(2.0);
  // Compare up to phase via the absolute overlap with the expected vectors.
  Vector lo(2), hi(2);
  lo << s, -s;
  hi << s, s;
  CHECK(std::abs(lo.dot(e.vectors.col(0))) == doctest::Approx(1.0));
  CHECK(std::abs(hi.dot(e.vectors.col(1))) == doctest::Approx(1.0));
}

TEST_CASE("eig_hermitian: reconstruction and unitarity on random input") {
  Rng rng(7);
  for (int trial = 0; trial < 12; ++trial) {
    Index n = 2 + trial % 7;
    Matrix h = random_hermitian(rng, n);
    EigResult e = eig_hermitian(h);
    Matrix recon =
        e.vectors * e.values.asDiagonal().toDenseMatrix().cast<Cplx>() *
        e.vectors.adjoint();
    CHECK((h - recon).norm() <= 1e-9 * (1.0 + h.norm()));
    CHECK((e.vectors.adjoint() * e.vectors - Matrix::Identity(n, n)).norm() <=
          1e-10 * (1.0 + h.norm()));
    for (Index k = 0; k + 1 < n; ++k) CHECK(e.values(k) <= e.values(k + 1));
  }
}

TEST_CASE("eig_hermitian rejects non-Hermitian input") {
  Matrix x(2, 2);
  x << 0, 1, 0, 0;
  CHECK_THROWS_AS(eig_hermitian(x), std::invalid_argument);
}

TEST_CASE("project_psd: clipping and fixed points") {
  CHECK((project_psd(diag2(1.0, -1.0)) - diag2(1.0, 0.0)).norm() ==
        doctest::Approx(0.0));
  CHECK(project_psd(-Matrix::Identity(3, 3)).norm() == doctest::Approx(0.0));

  Rng rng(11);
  for (int trial = 0; trial < 8; ++trial) {
    Matrix h = random_hermitian(rng, 4);
    Matrix p = project_psd(h);
    // PSD fixed point and idempotence.
    CHECK((project_psd(p) - p).norm() <= 1e-10 * (1.0 + p.norm()));
    CHECK(eig_hermitian(p).values(0) >= -1e-12);
  }
}

TEST_CASE("operator_norm cases") {
  CHECK(operator_norm(Matrix::Zero(3, 3)) == doctest::Approx(0.0));
  CHECK(operator_norm(diag2(3.0, -4.0)) == doctest::Approx(4.0));
  Matrix r1(2, 2);
  r1 << 0, 2, 0, 0;
  CHECK(operator_norm(r1) == doctest::Approx(2.0));
}

TEST_CASE("trace_norm and operator ball clip") {
  CHECK(trace_norm(diag2(3.0, -4.0)) == doctest::Approx(7.0));
  Matrix clipped = clip_operator_ball(diag2(3.0, -4.0), 2.0);
  CHECK(operator_norm(clipped) == doctest::Approx(2.0));
  CHECK((clipped - diag2(2.0, -2.0)).norm() <= 1e-9);
}

TEST_CASE("herm coords are isometric and invert") {
  Rng rng(3);
  Matrix h = random_hermitian(rng, 5);
  RealVector v = herm_coords(h);
  CHECK(v.norm() == doctest::Approx(h.norm()));
  CHECK((herm_from_coords(v, 5) - h).norm() <= 1e-13);
}

TEST_CASE("solve_feasibility: scalar examples") {
  // One 1x1 block with x = 1: feasible with witness (1).
  AffinePSDProblem p;
  p.blocks = {{1, kNoCap}};
  p.constraints = RealMatrix::Ones(1, 1);
  p.rhs = RealVector::Ones(1);
  FeasibilityResult r = solve_feasibility(p, 1e-9, 20000);
  REQUIRE(r.status == FeasStatus::Feasible);
  CHECK(r.witness[0](0, 0).real() == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(r.residual <= 1e-9);

  // x = -1 conflicts with the PSD cone; gap stabilizes at 1.
  p.rhs(0) = -1.0;
  FeasibilityResult bad = solve_feasibility(p, 1e-9, 20000);
  REQUIRE(bad.status == FeasStatus::InfeasibleEvidence);
  CHECK(bad.gap == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("solve_feasibility: two capped blocks with planted witness") {
  // U - V = diag(1, -1) with ||U||, ||V|| <= 1; U = diag(1,0), V = diag(0,1)
  // is feasible, and the solver must find some witness within tolerance.
  AffinePSDProblem p;
  p.blocks = {{2, 1.0}, {2, 1.0}};
  p.constraints = RealMatrix::Zero(4, 8);
  p.rhs = RealVector::Zero(4);
  // herm coords of a 2x2 block: [d0, d1, sqrt2*Re01, sqrt2*Im01]
  RealVector target = herm_coords(diag2(1.0, -1.0));
  for (int row = 0; row < 4; ++row) {
    p.constraints(row, row) = 1.0;
    p.constraints(row, 4 + row) = -1.0;
    p.rhs(row) = target(row);
  }
  FeasibilityResult r = solve_feasibility(p, 1e-8, 30000);
  REQUIRE(r.status == FeasStatus::Feasible);
  CHECK(r.residual <= 1e-8);
  CHECK(eig_hermitian(r.witness[0]).values(0) >= -1e-8);
  CHECK(operator_norm(r.witness[0]) <= 1.0 + 1e-7);
  CHECK(operator_norm(r.witness[1]) <= 1.0 + 1e-7);
  CHECK((r.witness[0] - r.witness[1] - diag2(1.0, -1.0)).norm() <= 1e-6);
}

TEST_CASE("solve_feasibility: planted random feasible problems") {
  Rng rng(23);
  for (int trial = 0; trial < 6; ++trial) {
    Index n = 2 + trial % 3;
    Matrix w = random_hermitian(rng, n);
    Matrix planted = project_psd(w);
    AffinePSDProblem p;
    p.blocks = {{n, kNoCap}};
    // Pin a handful of random real-linear functionals at the planted value.
    int rows = 3 + trial;
    p.constraints = RealMatrix(rows, n * n);
    p.rhs = RealVector(rows);
    RealVector planted_coords = herm_coords(planted);
    for (int rrow = 0; rrow < rows; ++rrow) {
      RealVector dir = herm_coords(random_hermitian(rng, n));
      p.constraints.row(rrow) = dir.transpose();
      p.rhs(rrow) = dir.dot(planted_coords);
    }
    FeasibilityResult r = solve_feasibility(p, 1e-8, 40000);
    REQUIRE(r.status == FeasStatus::Feasible);
    CHECK(r.residual <= 1e-8);
    CHECK(eig_hermitian(r.witness[0]).values(0) >= -1e-9);
  }
}

TEST_CASE("solve_feasibility rejects inconsistent dimensions") {
  AffinePSDProblem p;
  p.blocks = {{2, kNoCap}};
  p.constraints = RealMatrix::Ones(1, 3);  // 2x2 block has 4 coords
  p.rhs = RealVector::Ones(1);
  CHECK_THROWS_AS(solve_feasibility(p, 1e-8, 100), std::invalid_argument);
}

TEST_CASE("bisect_optimal: threshold predicates") {
  auto ge2 = [](double t) { return t >= 2.0; };
  CHECK(bisect_optimal(ge2, 0.0, 4.0, 1e-6) == doctest::Approx(2.0).epsilon(1e-6));
  auto ge0 = [](double t) { return t >= 0.0; };
  CHECK(bisect_optimal(ge0, -1.0, 1.0, 1e-6) ==
        doctest::Approx(0.0).epsilon(1e-6));

  auto never = [](double) { return false; };
  CHECK_THROWS_AS(bisect_optimal(never, 0.0, 1.0, 1e-6),
                  std::invalid_argument);
}

TEST_CASE("bisect_optimal matches a brute-force scan") {
  // Thresholds swept against a scan at step tol/10.
  for (double threshold : {0.3, 1.7, 2.9}) {
    auto pred = [threshold](double t) { return t >= threshold; };
    double tol = 1e-4;
    double b = bisect_optimal(pred, 0.0, 3.0, tol);
    double scan = 0.0;
    for (double t = 0.0; t <= 3.0; t += tol / 10.0)
      if (pred(t)) {
        scan = t;
        break;
      }
    CHECK(std::abs(b - scan) <= tol);
  }
}

TEST_CASE("maximize_linear: box-constrained linear objective") {
  // maximize <diag(1,-1), X> over 0 <= X <= I: optimum 1 at X = diag(1,0).
  SpectralBoxSet box({{0, 0.0, 1.0}});
  std::vector<const ProjectionSet*> sets = {&box};
  BlockVec dir = {diag2(1.0, -1.0)};
  BlockVec start = {Matrix::Zero(2, 2)};
  ProxMaxResult r = maximize_linear(sets, dir, start);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-8));
  CHECK((r.x[0] - diag2(1.0, 0.0)).norm() <= 1e-6);
}
