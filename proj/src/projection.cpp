// SPDX-License-Identifier: Apache-2.0
#include "opsys/projection.hpp"

#include <cmath>
#include <stdexcept>

namespace opsys {

double block_norm(const BlockVec& a) {
  double s = 0.0;
  for (const Matrix& m : a) s += m.squaredNorm();
  return std::sqrt(s);
}

double block_distance(const BlockVec& a, const BlockVec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]).squaredNorm();
  return std::sqrt(s);
}

BlockVec block_zero_like(const BlockVec& a) {
  BlockVec z;
  z.reserve(a.size());
  for (const Matrix& m : a) z.push_back(Matrix::Zero(m.rows(), m.cols()));
  return z;
}

BlockLayout BlockLayout::make(
    const std::vector<std::pair<Index, bool>>& blocks) {
  BlockLayout layout;
  for (auto [dim, herm] : blocks) {
    Entry e;
    e.dim = dim;
    e.hermitian = herm;
    e.offset = layout.total_;
    e.coords = herm ? dim * dim : 2 * dim * dim;
    layout.entries_.push_back(e);
    layout.total_ += e.coords;
  }
  return layout;
}

RealVector BlockLayout::to_coords(const BlockVec& x) const {
  RealVector v(total_);
  for (std::size_t b = 0; b < entries_.size(); ++b) {
    const Entry& e = entries_[b];
    if (e.hermitian) {
      v.segment(e.offset, e.coords) = herm_coords(x[b]);
    } else {
      Index n2 = e.dim * e.dim;
      Eigen::Map<const Eigen::VectorXcd> flat(x[b].data(), n2);
      v.segment(e.offset, n2) = flat.real();
      v.segment(e.offset + n2, n2) = flat.imag();
    }
  }
  return v;
}

BlockVec BlockLayout::from_coords(const RealVector& v) const {
  BlockVec x;
  x.reserve(entries_.size());
  for (const Entry& e : entries_) {
    if (e.hermitian) {
      x.push_back(herm_from_coords(v.segment(e.offset, e.coords), e.dim));
    } else {
      Index n2 = e.dim * e.dim;
      Matrix m(e.dim, e.dim);
      Eigen::Map<Eigen::VectorXcd> flat(m.data(), n2);
      flat.real() = v.segment(e.offset, n2);
      flat.imag() = v.segment(e.offset + n2, n2);
      x.push_back(std::move(m));
    }
  }
  return x;
}

BlockVec BlockLayout::zero_state() const {
  BlockVec x;
  x.reserve(entries_.size());
  for (const Entry& e : entries_) x.push_back(Matrix::Zero(e.dim, e.dim));
  return x;
}

double ProjectionSet::distance(const BlockVec& x) const {
  BlockVec y = x;
  project(y);
  return block_distance(x, y);
}

void SpectralBoxSet::project(BlockVec& x) const {
  for (const Item& item : items_) {
    Matrix& m = x[item.block];
    m = 0.5 * (m + m.adjoint()).eval();
    m = clip_spectrum(m, item.lo, item.hi);
  }
}

double SpectralBoxSet::distance(const BlockVec& x) const {
  double s = 0.0;
  for (const Item& item : items_) {
    Matrix h = 0.5 * (x[item.block] + x[item.block].adjoint());
    double herm_part = (x[item.block] - h).squaredNorm();
    EigResult eig = eig_hermitian(h);
    double spectral = 0.0;
    for (Index k = 0; k < eig.values.size(); ++k) {
      double lambda = eig.values(k);
      double clipped = std::min(std::max(lambda, item.lo), item.hi);
      spectral += (lambda - clipped) * (lambda - clipped);
    }
    s += herm_part + spectral;
  }
  return std::sqrt(s);
}

void OperatorBallSet::project(BlockVec& x) const {
  x[block_] = clip_operator_ball(x[block_], radius_);
}

void SubspaceSet::project(BlockVec& x) const {
  Matrix& m = x[block_];
  Matrix out = Matrix::Zero(m.rows(), m.cols());
  if (real_span_) {
    for (const Matrix& g : onb_) {
      double c = (g.adjoint() * m).trace().real();
      out.noalias() += c * g;
    }
  } else {
    for (const Matrix& g : onb_) {
      Cplx c = (g.adjoint() * m).trace();
      out.noalias() += c * g;
    }
  }
  m = std::move(out);
}

AffineOperator::AffineOperator(RealMatrix a) : matrix(std::move(a)) {
  cod.compute(matrix);
}

std::shared_ptr<const AffineOperator> make_affine_operator(RealMatrix a) {
  return std::make_shared<AffineOperator>(std::move(a));
}

void AffineSet::project(BlockVec& x) const {
  RealVector c = layout_.to_coords(x);
  RealVector r = op_->matrix * c - rhs_;
  c -= op_->cod.solve(r);
  x = layout_.from_coords(c);
}

double AffineSet::distance(const BlockVec& x) const {
  RealVector c = layout_.to_coords(x);
  RealVector r = op_->matrix * c - rhs_;
  return op_->cod.solve(r).norm();
}

double AffineSet::violation(const BlockVec& x) const {
  if (rhs_.size() == 0) return 0.0;
  RealVector r = op_->matrix * layout_.to_coords(x) - rhs_;
  return r.size() == 0 ? 0.0 : r.cwiseAbs().maxCoeff();
}

DykstraOutcome dykstra(const std::vector<const ProjectionSet*>& sets,
                       BlockVec& x, const DykstraOptions& opt) {
  std::vector<BlockVec> corrections(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i)
    if (sets[i]->needs_correction()) corrections[i] = block_zero_like(x);

  DykstraOutcome outcome;
  for (int cycle = 0; cycle < opt.max_cycles; ++cycle) {
    double gap = 0.0;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      BlockVec before = x;
      if (sets[i]->needs_correction()) {
        for (std::size_t b = 0; b < x.size(); ++b) x[b] += corrections[i][b];
        BlockVec shifted = x;
        sets[i]->project(x);
        for (std::size_t b = 0; b < x.size(); ++b)
          corrections[i][b] = shifted[b] - x[b];
      } else {
        sets[i]->project(x);
      }
      gap = std::max(gap, block_distance(before, x));
    }
    outcome.gap = gap;
    outcome.cycles = cycle + 1;
    if (gap <= opt.tol * (1.0 + block_norm(x))) {
      outcome.converged = true;
      break;
    }
  }
  return outcome;
}

}  // namespace opsys
