// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "opsys/decomposition.hpp"
#include "opsys/norms.hpp"

namespace opsys {

struct ConeSpanReport {
  struct Level {
    Index level;
    Index span_dim;
    Index full_dim;
  };
  std::vector<Level> per_level;
  bool proper = false;
  Index stabilized_level = 0;
};

// Properness of the dual cone through span density of the matrix cone:
// true iff the span of the collected cone elements reaches dim M_n(S) at the
// stabilized level. Systems with identity and algebras get exact spanning
// families; otherwise the span is probed by projecting the Hermitian level
// basis (and seeded samples) onto the cone.
ConeSpanReport dual_cone_proper(const SystemPtr& s, double tol,
                                Index level_cap = 3,
                                std::uint64_t seed = defaults::seed);

struct DualizabilityReport {
  DecompositionReport decomposition;
  ConeSpanReport cone_span;
  bool dualizable = false;
  std::string verdict;
  double implied_ratio_bound = 0.0;  // 4 * r_hat
  double max_observed_ratio = 0.0;
  int overflow_count = 0;
  struct Sample {
    std::string tag;
    double dual_norm;
    double d_norm;
    double ratio;
    bool overflow;
  };
  std::vector<Sample> samples;
};

// Combines the decomposition constant, the span-density flag and an
// empirical ratio scan over a seeded functional family: Hermitian basis
// duals, their signed sums and random self-adjoint functionals.
DualizabilityReport dualizable_verdict(const SystemPtr& s, Index level_max,
                                       double tol,
                                       const SeesawOptions& opt = {},
                                       int random_samples = 8);

// The functional family used by verdicts and the verification suites.
std::vector<std::pair<std::string, MatrixFunctional>> verdict_functionals(
    const SystemPtr& s, std::uint64_t seed, int random_samples,
    Index max_level = 2);

}  // namespace opsys
