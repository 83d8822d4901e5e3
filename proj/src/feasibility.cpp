// SPDX-License-Identifier: Apache-2.0
#include "opsys/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace opsys {

BlockLayout AffinePSDProblem::layout() const {
  std::vector<std::pair<Index, bool>> dims;
  dims.reserve(blocks.size());
  for (const Block& b : blocks) dims.emplace_back(b.dim, true);
  return BlockLayout::make(dims);
}

Index AffinePSDProblem::coord_dim() const {
  Index d = 0;
  for (const Block& b : blocks) d += b.dim * b.dim;
  return d;
}

void AffinePSDProblem::validate() const {
  if (blocks.empty())
    throw std::invalid_argument("AffinePSDProblem: no blocks");
  for (const Block& b : blocks)
    if (b.dim <= 0)
      throw std::invalid_argument("AffinePSDProblem: non-positive block dim");
  const Index d = coord_dim();
  if (constraints.rows() != rhs.size()) {
    std::ostringstream os;
    os << "AffinePSDProblem: " << constraints.rows() << " constraint rows vs "
       << rhs.size() << " right-hand sides";
    throw std::invalid_argument(os.str());
  }
  if (constraints.rows() > 0 && constraints.cols() != d) {
    std::ostringstream os;
    os << "AffinePSDProblem: constraint coefficient length "
       << constraints.cols() << " does not match block coordinate dimension "
       << d;
    throw std::invalid_argument(os.str());
  }
}

FeasibilityResult solve_feasibility(
    const AffinePSDProblem& p, double tol, int max_iter, const BlockVec* warm,
    std::shared_ptr<const AffineOperator> prefactored) {
  p.validate();
  if (tol <= 0) throw std::invalid_argument("solve_feasibility: tol <= 0");

  BlockLayout layout = p.layout();
  std::vector<SpectralBoxSet::Item> items;
  for (std::size_t b = 0; b < p.blocks.size(); ++b)
    items.push_back({b, 0.0, p.blocks[b].cap});
  SpectralBoxSet cone(items);

  std::shared_ptr<const AffineOperator> op = prefactored;
  if (!op) op = make_affine_operator(p.constraints);
  AffineSet affine(layout, op, p.rhs);

  FeasibilityResult result;

  // Unattainable right-hand side means the affine set itself is empty.
  if (p.constraints.rows() > 0) {
    RealVector ls = op->cod.solve(p.rhs);
    double attain = (p.constraints * ls - p.rhs).cwiseAbs().maxCoeff();
    if (attain > std::max(10.0 * tol, 1e-12 * (1.0 + p.rhs.norm()))) {
      result.status = FeasStatus::InfeasibleEvidence;
      result.residual = attain;
      result.gap = attain;
      return result;
    }
  }

  BlockVec x = warm ? *warm : layout.zero_state();
  if (warm && warm->size() != p.blocks.size()) x = layout.zero_state();

  std::vector<const ProjectionSet*> sets = {&cone, &affine};
  const int chunk = 50;
  int used = 0;
  std::deque<double> gap_window;
  const std::size_t window = 12;

  BlockVec best_witness;
  double best_violation = std::numeric_limits<double>::infinity();

  while (used < max_iter) {
    DykstraOptions opt;
    opt.max_cycles = std::min(chunk, max_iter - used);
    opt.tol = 0.05 * tol;
    DykstraOutcome out = dykstra(sets, x, opt);
    used += out.cycles;

    BlockVec w = x;
    cone.project(w);
    double violation = affine.violation(w);
    if (violation < best_violation) {
      best_violation = violation;
      best_witness = w;
    }
    if (violation <= tol) {
      result.status = FeasStatus::Feasible;
      result.witness = std::move(w);
      result.residual = violation;
      result.iterations = used;
      result.gap = 0.0;
      return result;
    }

    BlockVec a = x;
    affine.project(a);
    double gap = cone.distance(a);
    gap_window.push_back(gap);
    if (gap_window.size() > window) gap_window.pop_front();
    if (gap_window.size() == window) {
      double lo = *std::min_element(gap_window.begin(), gap_window.end());
      double hi = *std::max_element(gap_window.begin(), gap_window.end());
      if (lo > 10.0 * tol && (hi - lo) <= 0.01 * lo) {
        result.status = FeasStatus::InfeasibleEvidence;
        result.witness = std::move(best_witness);
        result.residual = best_violation;
        result.iterations = used;
        result.gap = lo;
        return result;
      }
    }
  }

  result.status = FeasStatus::Undecided;
  result.witness = std::move(best_witness);
  result.residual = best_violation;
  result.iterations = used;
  result.gap = gap_window.empty() ? 0.0 : gap_window.back();
  return result;
}

double bisect_optimal(const std::function<bool(double)>& feasible_at,
                      double lo, double hi, double tol, bool feasible_above) {
  if (!(tol > 0)) throw std::invalid_argument("bisect_optimal: tol <= 0");
  if (!(lo < hi)) throw std::invalid_argument("bisect_optimal: empty bracket");
  bool at_lo = feasible_at(lo);
  bool at_hi = feasible_at(hi);
  bool want_lo = !feasible_above;
  if (at_lo != want_lo || at_hi == want_lo) {
    std::ostringstream os;
    os << "bisect_optimal: bracket does not straddle the threshold "
       << "(predicate at lo=" << lo << " is " << (at_lo ? "true" : "false")
       << ", at hi=" << hi << " is " << (at_hi ? "true" : "false") << ")";
    throw std::invalid_argument(os.str());
  }
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (feasible_at(mid) == want_lo)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace opsys
