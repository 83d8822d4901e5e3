// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "opsys/types.hpp"

namespace opsys {

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPResult {
  LPStatus status = LPStatus::Infeasible;
  double value = 0.0;
  RealVector x;
};

// Dense two-phase primal simplex with Bland's rule and 1e-9 pivot tolerance:
//   maximize c.x  subject to  a_ub x <= b_ub, a_eq x = b_eq, x >= 0.
// Empty constraint groups may be passed as 0-row matrices.
LPResult lp_maximize(const RealMatrix& a_ub, const RealVector& b_ub,
                     const RealMatrix& a_eq, const RealVector& b_eq,
                     const RealVector& c);

}  // namespace opsys
