// SPDX-License-Identifier: Apache-2.0
#include "opsys/simplex.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace opsys {

namespace {

constexpr double kPivotTol = 1e-9;

// Tableau for min c.x, A x = b, x >= 0 with b >= 0. Rows 0..m-1 hold the
// constraints, row m the reduced costs, column n the right-hand side.
struct Tableau {
  RealMatrix t;
  std::vector<int> basis;
  int m, n;

  double rhs(int i) const { return t(i, n); }

  // Bland's rule keeps the iteration finite on degenerate tableaus.
  bool pivot_once() {
    int enter = -1;
    for (int j = 0; j < n; ++j)
      if (t(m, j) < -kPivotTol) {
        enter = j;
        break;
      }
    if (enter < 0) return false;  // optimal

    int leave = -1;
    double best = 0.0;
    for (int i = 0; i < m; ++i) {
      if (t(i, enter) <= kPivotTol) continue;
      double ratio = rhs(i) / t(i, enter);
      if (leave < 0 || ratio < best - 1e-15 ||
          (ratio <= best + 1e-15 && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) throw LPStatus::Unbounded;

    double p = t(leave, enter);
    t.row(leave) /= p;
    for (int i = 0; i <= m; ++i) {
      if (i == leave) continue;
      double f = t(i, enter);
      if (f != 0.0) t.row(i) -= f * t.row(leave);
    }
    basis[leave] = enter;
    return true;
  }

  void run() {
    while (pivot_once()) {
    }
  }
};

}  // namespace

LPResult lp_maximize(const RealMatrix& a_ub, const RealVector& b_ub,
                     const RealMatrix& a_eq, const RealVector& b_eq,
                     const RealVector& c) {
  const int vars = static_cast<int>(c.size());
  const int ub_rows = static_cast<int>(a_ub.rows());
  const int eq_rows = static_cast<int>(a_eq.rows());
  if ((ub_rows && a_ub.cols() != vars) || (eq_rows && a_eq.cols() != vars))
    throw std::invalid_argument("lp_maximize: constraint width mismatch");
  if (a_ub.rows() != b_ub.size() || a_eq.rows() != b_eq.size())
    throw std::invalid_argument("lp_maximize: rhs length mismatch");

  const int m = ub_rows + eq_rows;
  const int slacks = ub_rows;
  const int n_phase2 = vars + slacks;
  const int artificials = m;
  const int n = n_phase2 + artificials;

  // Assemble A x (+ slack) = b with b >= 0 and one artificial per row.
  RealMatrix a = RealMatrix::Zero(m, n);
  RealVector b(m);
  for (int i = 0; i < ub_rows; ++i) {
    a.block(i, 0, 1, vars) = a_ub.row(i);
    a(i, vars + i) = 1.0;
    b(i) = b_ub(i);
  }
  for (int i = 0; i < eq_rows; ++i) {
    a.block(ub_rows + i, 0, 1, vars) = a_eq.row(i);
    b(ub_rows + i) = b_eq(i);
  }
  for (int i = 0; i < m; ++i)
    if (b(i) < 0) {
      a.row(i) = -a.row(i);
      b(i) = -b(i);
    }
  for (int i = 0; i < m; ++i) a(i, n_phase2 + i) = 1.0;

  Tableau tab;
  tab.m = m;
  tab.n = n;
  tab.t = RealMatrix::Zero(m + 1, n + 1);
  tab.t.block(0, 0, m, n) = a;
  tab.t.block(0, n, m, 1) = b;
  tab.basis.resize(m);
  for (int i = 0; i < m; ++i) tab.basis[i] = n_phase2 + i;

  // Phase 1: minimize the artificial mass.
  for (int j = n_phase2; j < n; ++j) tab.t(m, j) = 1.0;
  for (int i = 0; i < m; ++i) tab.t.row(m) -= tab.t.row(i);

  LPResult result;
  try {
    tab.run();
  } catch (LPStatus) {
    result.status = LPStatus::Infeasible;  // phase 1 cannot be unbounded
    return result;
  }
  if (-tab.t(m, n) > 1e-7) {
    result.status = LPStatus::Infeasible;
    return result;
  }

  // Drive remaining artificials out of the basis where possible.
  for (int i = 0; i < m; ++i) {
    if (tab.basis[i] < n_phase2) continue;
    int enter = -1;
    for (int j = 0; j < n_phase2; ++j)
      if (std::abs(tab.t(i, j)) > kPivotTol) {
        enter = j;
        break;
      }
    if (enter < 0) continue;  // redundant row
    double p = tab.t(i, enter);
    tab.t.row(i) /= p;
    for (int r = 0; r <= m; ++r) {
      if (r == i) continue;
      double f = tab.t(r, enter);
      if (f != 0.0) tab.t.row(r) -= f * tab.t.row(i);
    }
    tab.basis[i] = enter;
  }

  // Phase 2 objective: minimize -c.x (maximize c.x); artificials locked out.
  tab.t.row(m).setZero();
  for (int j = 0; j < vars; ++j) tab.t(m, j) = -c(j);
  for (int j = n_phase2; j < n; ++j) tab.t(m, j) = 1e12;
  for (int i = 0; i < m; ++i) {
    int bj = tab.basis[i];
    double f = tab.t(m, bj);
    if (f != 0.0) tab.t.row(m) -= f * tab.t.row(i);
  }

  try {
    tab.run();
  } catch (LPStatus s) {
    result.status = s;
    return result;
  }

  result.status = LPStatus::Optimal;
  result.x = RealVector::Zero(vars);
  for (int i = 0; i < m; ++i)
    if (tab.basis[i] < vars) result.x(tab.basis[i]) = tab.rhs(i);
  result.value = c.dot(result.x);
  return result;
}

}  // namespace opsys
