// SPDX-License-Identifier: Apache-2.0
#include "opsys/conic.hpp"

#include <cmath>

namespace opsys {

double linear_value(const BlockVec& direction, const BlockVec& x) {
  double v = 0.0;
  for (std::size_t b = 0; b < direction.size(); ++b)
    v += (direction[b].adjoint() * x[b]).trace().real();
  return v;
}

namespace {
double max_set_distance(const std::vector<const ProjectionSet*>& sets,
                        const BlockVec& x) {
  double d = 0.0;
  for (const ProjectionSet* s : sets) d = std::max(d, s->distance(x));
  return d;
}
}  // namespace

ProxMaxResult maximize_linear(const std::vector<const ProjectionSet*>& sets,
                              const BlockVec& direction, BlockVec start,
                              const ProxMaxOptions& opt) {
  ProxMaxResult result;
  const double dnorm = block_norm(direction);

  DykstraOptions proj;
  proj.max_cycles = opt.projection_cycles;
  proj.tol = opt.projection_tol;

  dykstra(sets, start, proj);
  result.x = start;

  if (dnorm < 1e-15) {
    result.value = 0.0;
    result.set_residual = max_set_distance(sets, result.x);
    return result;
  }

  BlockVec unit = direction;
  for (Matrix& m : unit) m /= dnorm;

  double best = linear_value(unit, result.x);
  double lambda = opt.lambda0;
  int flat_stages = 0;

  for (int stage = 0; stage < 1024; ++stage) {
    BlockVec y = result.x;
    for (std::size_t b = 0; b < y.size(); ++b) y[b] += lambda * unit[b];
    dykstra(sets, y, proj);
    double v = linear_value(unit, y);
    ++result.stages;
    if (v > best + 1e-15) {
      if (v - best <= opt.value_tol && lambda >= opt.lambda_max) ++flat_stages;
      else flat_stages = 0;
      best = v;
      result.x = std::move(y);
    } else if (lambda >= opt.lambda_max) {
      ++flat_stages;
    }
    if (lambda < opt.lambda_max) {
      lambda = std::min(lambda * opt.growth, opt.lambda_max);
    } else if (flat_stages >= 3 || result.stages >= opt.fixed_stage_cap) {
      break;
    }
  }

  result.value = best * dnorm;
  result.set_residual = max_set_distance(sets, result.x);
  return result;
}

}  // namespace opsys
