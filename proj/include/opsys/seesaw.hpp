// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <limits>

#include "opsys/conic.hpp"
#include "opsys/projection.hpp"

namespace opsys {

struct SeesawOptions {
  int restarts = defaults::restarts;
  int max_rounds = 40;
  double tol = defaults::feasibility_tol;
  std::uint64_t seed = defaults::seed;
  // Certified upper bound for the sup, when one is known; restarts stop once
  // the lower bound reaches it.
  double known_upper = std::numeric_limits<double>::infinity();
  // Restarts stop after this many consecutive non-improving starts.
  int no_improve_exit = 4;
  ProxMaxOptions prox;
};

// Alternating maximization of ||A(x)|| (or of the top eigenvalue of A(x))
// for a linear map A over an intersection of projection sets: fix unit
// vectors and maximize the linearized objective by a proximal sweep, then
// update the vectors from the image matrix.
struct SeesawProblem {
  enum class Objective { Norm, TopEigenvalue };

  std::vector<const ProjectionSet*> sets;
  std::function<Matrix(const BlockVec&)> apply;
  // Direction with sum_b Re<D_b, X_b> = Re< left, A(X) right >.
  std::function<BlockVec(const Vector& left, const Vector& right)> representer;
  std::vector<BlockVec> starts;
  Objective objective = Objective::Norm;
};

struct SeesawOutcome {
  double value = -std::numeric_limits<double>::infinity();
  BlockVec x;
  Vector left, right;
  int rounds = 0;
  int restarts_used = 0;
  double set_residual = 0.0;
};

SeesawOutcome run_seesaw(const SeesawProblem& problem,
                         const SeesawOptions& opt);

}  // namespace opsys
