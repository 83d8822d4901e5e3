// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "opsys/system.hpp"

namespace opsys {

struct DecompositionValue {
  double value = 0.0;
  bool infinite = false;
  std::optional<MatrixElement> u, v;  // witness pair when finite
  double residual = 0.0;              // ||u - v - x||_F at the witness
  std::string method;  // "order-unit" | "spectral" | "bisection"
};

// min{ max(||u||, ||v||) : x = u - v, u, v in M_n(S)^+ } for self-adjoint x
// of unit norm (the caller normalizes). Order-unit and spectral witnesses
// settle systems with identity and C*-algebras exactly; the general case
// bisects capped two-block feasibility problems, reporting +inf (flagged)
// when even the cap 1e3 is infeasible.
DecompositionValue decomposition_value(const MatrixElement& x, double tol);

struct DecompositionReport {
  Index level_max = 0;
  int sample_count = 0;
  double r_hat = 0.0;
  bool infinite = false;
  std::string worst_tag;
  struct Item {
    Index level;
    std::string tag;
    double value;
    bool infinite;
    double residual;
  };
  std::vector<Item> items;
  std::vector<std::pair<Index, double>> per_level;  // max per level
};

// r-hat over a deterministic sample per level: seeded random self-adjoint
// unit-norm elements plus the structured family (the Hermitian basis of the
// level and consecutive signed sums).
DecompositionReport decomposition_constant(const SystemPtr& s, Index level_max,
                                           int sample_count,
                                           std::uint64_t seed,
                                           double tol = 1e-7);

// Concrete adjoin-identity unitization span(S) + C I_d inside M_d. The
// resulting matrix norm is the one inherited from M_d, which need not agree
// with the abstract unitization norm of the order structure; callers should
// treat it as the concrete construction only.
SystemPtr adjoin_unit(const SystemPtr& s);

}  // namespace opsys
