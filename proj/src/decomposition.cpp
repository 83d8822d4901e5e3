// SPDX-License-Identifier: Apache-2.0
#include "opsys/decomposition.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "opsys/eig.hpp"
#include "opsys/feasibility.hpp"

namespace opsys {

namespace {

// Rows forcing a Hermitian block into M_n(S)^sa: pairings with an
// orthonormal basis of the orthogonal complement inside Herm(nd).
RealMatrix complement_rows(const OperatorSystem& s, Index level) {
  auto lb = s.level_basis(level);
  const Index nd = level * s.ambient_dim();
  const Index full = nd * nd;
  const Index k = static_cast<Index>(lb->herm_onb.size());
  RealMatrix g(full, k);
  for (Index c = 0; c < k; ++c)
    g.col(c) = herm_coords(lb->herm_onb[static_cast<size_t>(c)]);
  // Householder QR of the basis; the trailing columns of Q span the
  // complement.
  Eigen::HouseholderQR<RealMatrix> qr(g);
  RealMatrix q = qr.householderQ();
  return q.rightCols(full - k).transpose();
}

struct BisectionSetup {
  AffinePSDProblem problem;
  std::shared_ptr<const AffineOperator> factorization;
  SystemPtr keepalive;  // pins the cache key address
};

// U - V = x with U, V in M_n(S)^sa; the constraint matrix depends only on
// (S, n), so it is cached and shared across elements and bisection steps.
BisectionSetup& bisection_setup(const SystemPtr& s, Index level) {
  static std::mutex mutex;
  static std::map<std::pair<const OperatorSystem*, Index>, BisectionSetup>
      cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(s.get(), level);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  const Index nd = level * s->ambient_dim();
  const Index full = nd * nd;
  BisectionSetup setup;
  setup.keepalive = s;
  setup.problem.blocks = {{nd, kNoCap}, {nd, kNoCap}};
  RealMatrix comp = complement_rows(*s, level);
  const Index rows = full + 2 * comp.rows();
  RealMatrix a = RealMatrix::Zero(rows, 2 * full);
  a.block(0, 0, full, full) = RealMatrix::Identity(full, full);
  a.block(0, full, full, full) = -RealMatrix::Identity(full, full);
  a.block(full, 0, comp.rows(), full) = comp;
  a.block(full + comp.rows(), full, comp.rows(), full) = comp;
  setup.problem.constraints = std::move(a);
  setup.problem.rhs = RealVector::Zero(rows);
  setup.factorization = make_affine_operator(setup.problem.constraints);
  auto [pos, inserted] = cache.emplace(key, std::move(setup));
  return pos->second;
}

bool witness_in_span(const OperatorSystem& s, Index level, const Matrix& w) {
  std::vector<Matrix> c = extract_coeffs(s, level, w);
  return (assemble_concrete(s, level, c) - w).norm() <=
         1e-9 * (1.0 + w.norm());
}

}  // namespace

DecompositionValue decomposition_value(const MatrixElement& x, double tol) {
  if (!x.self_adjoint())
    throw std::invalid_argument("decomposition_value: x is not self-adjoint");
  DecompositionValue out;
  const SystemPtr& sys = x.system;
  const Index n = x.level;
  const double norm = element_norm(x);
  if (norm < 1e-13) {
    out.value = 0.0;
    out.method = "order-unit";
    out.u = element_from_concrete(sys, n, Matrix::Zero(x.concrete.rows(),
                                                       x.concrete.cols()));
    out.v = out.u;
    return out;
  }

  // Order-unit witness: (||x|| 1 + x)/2 and (||x|| 1 - x)/2 are positive,
  // stay in the span, and realize the lower bound max eigenvalue = ||x||.
  if (sys->contains_identity()) {
    MatrixElement e = unit_element(sys, n);
    MatrixElement u = 0.5 * (norm * e + x);
    MatrixElement v = 0.5 * (norm * e - x);
    out.value = norm;
    out.u = std::move(u);
    out.v = std::move(v);
    out.residual = ((*out.u - *out.v).concrete - x.concrete).norm();
    out.method = "order-unit";
    return out;
  }

  // Spectral witness: positive and negative parts stay in the span when the
  // span is an algebra (and occasionally otherwise; membership is checked).
  {
    Matrix h = 0.5 * (x.concrete + x.concrete.adjoint());
    Matrix plus = project_psd(h);
    Matrix minus = plus - h;
    if (witness_in_span(*sys, n, plus) && witness_in_span(*sys, n, minus)) {
      out.value = norm;
      out.u = element_from_concrete(sys, n, plus);
      out.v = element_from_concrete(sys, n, minus);
      out.residual = ((*out.u - *out.v).concrete - x.concrete).norm();
      out.method = "spectral";
      return out;
    }
  }

  // Bisection over the cap of the two-block feasibility problem.
  BisectionSetup& setup = bisection_setup(sys, n);
  RealVector rhs = setup.problem.rhs;
  rhs.head(x.concrete.rows() * x.concrete.rows()) =
      herm_coords(0.5 * (x.concrete + x.concrete.adjoint()));
  AffinePSDProblem p = setup.problem;
  p.rhs = rhs;

  const double feas_tol = std::max(tol * 1e-2, 1e-10);
  BlockVec warm;
  BlockVec best_witness;
  auto feasible_at = [&](double t) {
    p.blocks[0].cap = t;
    p.blocks[1].cap = t;
    FeasibilityResult r =
        solve_feasibility(p, feas_tol, defaults::max_iterations,
                          warm.empty() ? nullptr : &warm, setup.factorization);
    if (r.status == FeasStatus::Feasible) {
      warm = r.witness;
      best_witness = r.witness;
      return true;
    }
    return false;
  };

  if (!feasible_at(defaults::decomposition_cap)) {
    out.infinite = true;
    out.value = std::numeric_limits<double>::infinity();
    out.method = "bisection";
    return out;
  }
  double lo = norm, hi = defaults::decomposition_cap;
  // The lower bound max(lambda_max(x), lambda_max(-x)) = ||x|| may itself be
  // feasible (algebra-like spans); probe it before bisecting.
  if (feasible_at(norm * (1.0 + 1e-9))) {
    hi = norm * (1.0 + 1e-9);
  } else {
    while (hi - lo > std::max(tol, 1e-9 * hi)) {
      double mid = 0.5 * (lo + hi);
      if (feasible_at(mid))
        hi = mid;
      else
        lo = mid;
    }
  }
  out.value = hi;
  out.u = element_from_concrete(sys, n, best_witness[0]);
  out.v = element_from_concrete(sys, n, best_witness[1]);
  out.residual = ((*out.u - *out.v).concrete - x.concrete).norm();
  out.method = "bisection";
  return out;
}

DecompositionReport decomposition_constant(const SystemPtr& s, Index level_max,
                                           int sample_count,
                                           std::uint64_t seed, double tol) {
  if (level_max < 1)
    throw std::invalid_argument("decomposition_constant: level_max >= 1");
  DecompositionReport report;
  report.level_max = level_max;

  for (Index n = 1; n <= level_max; ++n) {
    std::vector<std::pair<std::string, MatrixElement>> samples;
    auto lb = s->level_basis(n);
    for (std::size_t r = 0; r < lb->herm_onb.size(); ++r) {
      std::ostringstream tag;
      tag << "basis[" << r << "]@" << n;
      MatrixElement el;
      el.system = s;
      el.level = n;
      el.concrete = lb->herm_onb[r];
      el.coeffs = extract_coeffs(*s, n, el.concrete);
      samples.emplace_back(tag.str(), std::move(el));
    }
    for (std::size_t r = 0; r + 1 < lb->herm_onb.size(); ++r) {
      for (double sign : {1.0, -1.0}) {
        std::ostringstream tag;
        tag << "basis[" << r << "]" << (sign > 0 ? "+" : "-") << "basis["
            << r + 1 << "]@" << n;
        MatrixElement el;
        el.system = s;
        el.level = n;
        el.concrete = lb->herm_onb[r] + sign * lb->herm_onb[r + 1];
        el.coeffs = extract_coeffs(*s, n, el.concrete);
        samples.emplace_back(tag.str(), std::move(el));
      }
    }
    for (int r = 0; r < sample_count; ++r) {
      std::ostringstream tag;
      tag << "random[" << r << "]@" << n;
      samples.emplace_back(tag.str(),
                           random_selfadjoint_element(s, n, seed, "decomp", r));
    }

    double level_best = 0.0;
    for (auto& [tag, el] : samples) {
      double norm = element_norm(el);
      if (norm < 1e-12) continue;
      MatrixElement unit_norm = (1.0 / norm) * el;
      DecompositionValue dv = decomposition_value(unit_norm, tol);
      DecompositionReport::Item item;
      item.level = n;
      item.tag = tag;
      item.value = dv.value;
      item.infinite = dv.infinite;
      item.residual = dv.residual;
      report.items.push_back(item);
      ++report.sample_count;
      if (dv.infinite) {
        report.infinite = true;
        report.worst_tag = tag;
        level_best = std::numeric_limits<double>::infinity();
        break;  // one indecomposable element settles the level
      }
      if (dv.value > level_best) level_best = dv.value;
      if (dv.value > report.r_hat) {
        report.r_hat = dv.value;
        report.worst_tag = tag;
      }
    }
    report.per_level.emplace_back(n, level_best);
    if (report.infinite) {
      report.r_hat = std::numeric_limits<double>::infinity();
      break;
    }
  }
  return report;
}

SystemPtr adjoin_unit(const SystemPtr& s) {
  if (s->contains_identity())
    throw std::invalid_argument("adjoin_unit: system already contains I");
  const Index d = s->ambient_dim();
  Matrix id = Matrix::Identity(d, d);
  Matrix residual = id;
  for (const Matrix& b : s->basis())
    residual -= (b.adjoint() * id).trace() * b;
  std::vector<Matrix> basis = s->basis();
  basis.push_back(residual / residual.norm());
  return make_system(basis, true, s->label() + "+unit");
}

}  // namespace opsys
