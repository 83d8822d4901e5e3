// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "opsys/projection.hpp"
#include "opsys/types.hpp"

namespace opsys {

inline constexpr double kNoCap = std::numeric_limits<double>::infinity();

// Conic feasibility instance: Hermitian PSD blocks (optionally capped in
// operator norm) intersected with an affine subspace of their concatenated
// Hermitian coordinates.
struct AffinePSDProblem {
  struct Block {
    Index dim;
    double cap = kNoCap;
  };

  std::vector<Block> blocks;
  RealMatrix constraints;  // rows act on herm_coords of the blocks
  RealVector rhs;

  BlockLayout layout() const;
  Index coord_dim() const;
  void validate() const;  // throws on shape mismatch
};

enum class FeasStatus { Feasible, InfeasibleEvidence, Undecided };

struct FeasibilityResult {
  FeasStatus status = FeasStatus::Undecided;
  BlockVec witness;     // cone-exact blocks
  double residual = 0;  // max absolute constraint violation at the witness
  int iterations = 0;
  double gap = 0;  // inter-set distance estimate when not feasible
};

// Dykstra-corrected alternating projections between the capped PSD product
// cone and the affine subspace. Classifies infeasibility as evidence only:
// the inter-set gap must stabilize above 10*tol over a full window.
FeasibilityResult solve_feasibility(
    const AffinePSDProblem& p, double tol = defaults::feasibility_tol,
    int max_iter = defaults::max_iterations, const BlockVec* warm = nullptr,
    std::shared_ptr<const AffineOperator> prefactored = nullptr);

// Bisection for the threshold of a monotone predicate. feasible_above
// declares the direction: true means the predicate holds for t above the
// threshold. Throws if the bracket does not straddle.
double bisect_optimal(const std::function<bool(double)>& feasible_at,
                      double lo, double hi, double tol,
                      bool feasible_above = true);

}  // namespace opsys
