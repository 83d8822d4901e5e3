// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <vector>

#include "opsys/eig.hpp"
#include "opsys/types.hpp"

namespace opsys {

// State for block-structured convex problems: one complex matrix per block.
using BlockVec = std::vector<Matrix>;

double block_norm(const BlockVec& a);
double block_distance(const BlockVec& a, const BlockVec& b);
BlockVec block_zero_like(const BlockVec& a);

// Real coordinate layout of a BlockVec. Hermitian blocks use herm_coords
// (n^2 reals); general complex blocks use [Re | Im] of the entries (2 n^2).
class BlockLayout {
 public:
  struct Entry {
    Index dim;
    bool hermitian;
    Index offset;
    Index coords;
  };

  static BlockLayout make(const std::vector<std::pair<Index, bool>>& blocks);

  Index total() const { return total_; }
  const std::vector<Entry>& entries() const { return entries_; }

  RealVector to_coords(const BlockVec& x) const;
  BlockVec from_coords(const RealVector& v) const;
  BlockVec zero_state() const;

 private:
  std::vector<Entry> entries_;
  Index total_ = 0;
};

class ProjectionSet {
 public:
  virtual ~ProjectionSet() = default;
  virtual void project(BlockVec& x) const = 0;
  // Distance from x to the set; default projects a copy.
  virtual double distance(const BlockVec& x) const;
  // Dykstra correction is skipped for affine sets.
  virtual bool needs_correction() const { return true; }
};

// Per-block spectral box: eigenvalues clipped into [lo, hi].
class SpectralBoxSet : public ProjectionSet {
 public:
  struct Item {
    std::size_t block;
    double lo;
    double hi;
  };
  explicit SpectralBoxSet(std::vector<Item> items) : items_(std::move(items)) {}
  void project(BlockVec& x) const override;
  double distance(const BlockVec& x) const override;

 private:
  std::vector<Item> items_;
};

// Operator-norm ball for one (generally non-Hermitian) block.
class OperatorBallSet : public ProjectionSet {
 public:
  OperatorBallSet(std::size_t block, double radius)
      : block_(block), radius_(radius) {}
  void project(BlockVec& x) const override;

 private:
  std::size_t block_;
  double radius_;
};

// Span of an orthonormal family; real (Hermitian) spans take real
// coefficients, complex spans take complex ones.
class SubspaceSet : public ProjectionSet {
 public:
  SubspaceSet(std::size_t block, std::vector<Matrix> onb, bool real_span)
      : block_(block), onb_(std::move(onb)), real_span_(real_span) {}
  void project(BlockVec& x) const override;
  bool needs_correction() const override { return false; }

 private:
  std::size_t block_;
  std::vector<Matrix> onb_;
  bool real_span_;
};

// Pre-factorized affine operator, shareable across solves that differ only in
// the right-hand side.
struct AffineOperator {
  RealMatrix matrix;
  Eigen::CompleteOrthogonalDecomposition<RealMatrix> cod;
  explicit AffineOperator(RealMatrix a);
};

std::shared_ptr<const AffineOperator> make_affine_operator(RealMatrix a);

class AffineSet : public ProjectionSet {
 public:
  AffineSet(BlockLayout layout, std::shared_ptr<const AffineOperator> op,
            RealVector rhs)
      : layout_(std::move(layout)), op_(std::move(op)), rhs_(std::move(rhs)) {}
  void project(BlockVec& x) const override;
  double distance(const BlockVec& x) const override;
  bool needs_correction() const override { return false; }
  // Max absolute violation of the rows at x.
  double violation(const BlockVec& x) const;

 private:
  BlockLayout layout_;
  std::shared_ptr<const AffineOperator> op_;
  RealVector rhs_;
};

struct DykstraOptions {
  int max_cycles = 1000;
  double tol = 1e-11;
};

struct DykstraOutcome {
  double gap = 0.0;  // largest within-cycle displacement at the last cycle
  int cycles = 0;
  bool converged = false;
};

// Cyclic Dykstra iteration; corrections kept only for sets that need them.
DykstraOutcome dykstra(const std::vector<const ProjectionSet*>& sets,
                       BlockVec& x, const DykstraOptions& opt);

}  // namespace opsys
