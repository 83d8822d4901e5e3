// SPDX-License-Identifier: Apache-2.0
#include "opsys/seesaw.hpp"

#include "opsys/eig.hpp"

namespace opsys {

namespace {
// (value, left, right) of the chosen objective at the image matrix.
void leading_pair(const Matrix& t, SeesawProblem::Objective objective,
                  double& value, Vector& left, Vector& right) {
  if (objective == SeesawProblem::Objective::Norm) {
    SingularTriple trip = top_singular_triple(t);
    value = trip.sigma;
    left = trip.left;
    right = trip.right;
  } else {
    Matrix h = 0.5 * (t + t.adjoint());
    EigResult eig = eig_hermitian(h);
    Index top = eig.values.size() - 1;
    value = eig.values(top);
    left = eig.vectors.col(top);
    right = left;
  }
}
}  // namespace

SeesawOutcome run_seesaw(const SeesawProblem& problem,
                         const SeesawOptions& opt) {
  SeesawOutcome best;
  int non_improving = 0;
  const double round_tol = 1e-11;

  for (const BlockVec& start : problem.starts) {
    if (best.restarts_used >= opt.restarts) break;
    ++best.restarts_used;

    BlockVec x = start;
    {
      DykstraOptions proj;
      proj.max_cycles = opt.prox.projection_cycles;
      proj.tol = opt.prox.projection_tol;
      dykstra(problem.sets, x, proj);
    }

    double prev = -std::numeric_limits<double>::infinity();
    double local_best = prev;
    for (int round = 0; round < opt.max_rounds; ++round) {
      Matrix t = problem.apply(x);
      double value;
      Vector left, right;
      leading_pair(t, problem.objective, value, left, right);
      if (value > best.value) {
        best.value = value;
        best.x = x;
        best.left = left;
        best.right = right;
        best.rounds = round + 1;
      }
      local_best = std::max(local_best, value);
      if (value <= prev + round_tol) break;
      prev = value;

      BlockVec dir = problem.representer(left, right);
      ProxMaxResult pr = maximize_linear(problem.sets, dir, std::move(x),
                                         opt.prox);
      x = std::move(pr.x);
    }

    if (local_best < best.value - 1e-12) ++non_improving;
    else non_improving = 0;
    if (best.value >= opt.known_upper - 1e-9) break;
    if (non_improving >= opt.no_improve_exit) break;
  }

  if (!best.x.empty()) {
    for (const ProjectionSet* s : problem.sets)
      best.set_residual = std::max(best.set_residual, s->distance(best.x));
  }
  return best;
}

}  // namespace opsys
