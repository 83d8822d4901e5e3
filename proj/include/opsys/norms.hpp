// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "opsys/choi.hpp"
#include "opsys/functional.hpp"
#include "opsys/seesaw.hpp"

namespace opsys {

struct NormReport {
  double value = 0.0;
  std::string method;  // "extension-sdp" | "see-saw" | "lp-oracle"
  int level_used = 0;
  int restarts = 0;
  double tolerance = 0.0;
  double residual = 0.0;  // witness infeasibility at the certified point
  std::vector<std::pair<int, double>> per_level;
  // Independent see-saw value when the method is extension-sdp.
  std::optional<double> crosscheck;
  std::optional<MatrixElement> witness_element;
  Vector witness_left, witness_right;
  std::optional<ChoiCertificate> witness_choi;
};

// sup{ ||theta_f^{(n)}(x)|| : x in M_n(S)^+, ||x|| <= 1, n <= level_max };
// see-saw lower bounds with certified witnesses, monotone per-level trace.
NormReport d_norm(const MatrixFunctional& f, int level_max,
                  const SeesawOptions& opt = {});

// ||theta_f^{(m)}|| over the unit ball of M_m(S): equals ||theta_f||_cb by
// the level-m reduction; certified see-saw lower bound.
NormReport smith_norm(const MatrixFunctional& f, const SeesawOptions& opt = {});

// ||f|| = ||theta_f||_cb as the minimum over extensions of theta_f to M_d,
// decided through the 2x2 block Choi feasibility (CP pair with capped unit
// images) and bisection on the cap; the smith see-saw value is attached as a
// cross-check and lower bracket.
NormReport dual_norm(const MatrixFunctional& f,
                     double tol = defaults::feasibility_tol,
                     const SeesawOptions& opt = {});

struct RatioReport {
  NormReport dual;
  NormReport dnorm;
  double ratio = 1.0;
  bool overflow = false;  // d-norm below tol while the dual norm is not
  bool flagged = false;   // system is unital or a C*-algebra
};

RatioReport ratio_report(const MatrixFunctional& f, int level_max, double tol,
                         const SeesawOptions& opt = {});

// sup{ ||theta_z^{(n)}(psi)|| : psi in M_n(S*)^+ with cb-norm <= 1, n <= N },
// parameterized through CP extension Choi matrices with capped unit image;
// recovers the operator norm of z on unital systems.
NormReport bidual_norm(const MatrixElement& z, int level_max,
                       const SeesawOptions& opt = {});

}  // namespace opsys
