// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "opsys/projection.hpp"

namespace opsys {

// Objective sum_b Re<direction[b], X[b]>_F, linear over the state.
double linear_value(const BlockVec& direction, const BlockVec& x);

struct ProxMaxOptions {
  double lambda0 = 1.0;
  double growth = 8.0;
  double lambda_max = 1e6;
  int fixed_stage_cap = 160;  // repeats at lambda_max
  double value_tol = 1e-11;
  int projection_cycles = 600;
  double projection_tol = 1e-12;
};

struct ProxMaxResult {
  BlockVec x;
  double value = 0.0;
  double set_residual = 0.0;  // max distance to the individual sets
  int stages = 0;
};

// Maximizes the linear objective over the intersection of the sets by a
// proximal sweep: repeatedly project x + lambda * direction back onto the
// intersection, growing lambda geometrically and then iterating at the top
// step until the value stalls. Every reported value is evaluated at a point
// that has been projected back onto the sets, so it is a lower bound up to
// the reported set residual.
ProxMaxResult maximize_linear(const std::vector<const ProjectionSet*>& sets,
                              const BlockVec& direction, BlockVec start,
                              const ProxMaxOptions& opt = {});

}  // namespace opsys
