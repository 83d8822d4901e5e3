// SPDX-License-Identifier: Apache-2.0
#include "opsys/choi.hpp"

#include <sstream>
#include <stdexcept>

#include "opsys/eig.hpp"
#include "opsys/rng.hpp"

namespace opsys {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix apply_choi(const Matrix& choi, Index d, Index m, const Matrix& x) {
  Matrix out = Matrix::Zero(m, m);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      Cplx c = x(i, j);
      if (c != Cplx(0, 0)) out += c * choi.block(i * m, j * m, m, m);
    }
  return out;
}

Matrix compression_choi(const Matrix& v) {
  const Index d = v.rows();
  const Index m = v.cols();
  Matrix choi = Matrix::Zero(d * m, d * m);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      choi.block(i * m, j * m, m, m) = v.row(i).adjoint() * v.row(j);
  return choi;
}

MatrixFunctional functional_from_choi(SystemPtr s, Index m,
                                      const Matrix& choi) {
  const Index d = s->ambient_dim();
  std::vector<Matrix> values;
  values.reserve(static_cast<size_t>(s->dim()));
  for (const Matrix& b : s->basis()) values.push_back(apply_choi(choi, d, m, b));
  return functional_from_values(std::move(s), m, std::move(values));
}

ConstraintBuilder::ConstraintBuilder(const AffinePSDProblem& p)
    : layout_(p.layout()) {}

void ConstraintBuilder::add_pairing(
    const std::vector<std::pair<std::size_t, Matrix>>& terms, double rhs) {
  RealVector row = RealVector::Zero(layout_.total());
  for (const auto& [block, h] : terms) {
    const BlockLayout::Entry& e = layout_.entries()[block];
    row.segment(e.offset, e.coords) += herm_coords(h);
  }
  rows_.push_back(std::move(row));
  rhs_.push_back(rhs);
}

void ConstraintBuilder::add_complex_trace(std::size_t block, const Matrix& m,
                                          Cplx value) {
  // Tr[X M] for Hermitian X splits into two Hermitian pairings.
  Matrix re_part = 0.5 * (m + m.adjoint());
  Matrix im_part = Cplx(0, -0.5) * (m - m.adjoint());
  add_pairing({{block, re_part}}, value.real());
  add_pairing({{block, im_part}}, value.imag());
}

void ConstraintBuilder::add_partial_trace_link(std::size_t choi_block, Index d,
                                               Index m, std::size_t z_block) {
  // Hermitian coordinate patterns of M_m paired against both sides.
  auto pattern_rows = [&](const Matrix& p) {
    Matrix lifted = kron(Matrix::Identity(d, d), p);
    add_pairing({{choi_block, lifted}, {z_block, (-p).eval()}}, 0.0);
  };
  for (Index k = 0; k < m; ++k) {
    Matrix p = Matrix::Zero(m, m);
    p(k, k) = 1.0;
    pattern_rows(p);
  }
  const double s = 1.0 / std::sqrt(2.0);
  for (Index k = 0; k < m; ++k)
    for (Index l = k + 1; l < m; ++l) {
      Matrix p = Matrix::Zero(m, m);
      p(k, l) = s;
      p(l, k) = s;
      pattern_rows(p);
      p(k, l) = Cplx(0, s);
      p(l, k) = Cplx(0, -s);
      pattern_rows(p);
    }
}

void ConstraintBuilder::finalize(AffinePSDProblem& p) const {
  p.constraints = RealMatrix::Zero(static_cast<Index>(rows_.size()),
                                   layout_.total());
  p.rhs = RealVector::Zero(static_cast<Index>(rows_.size()));
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    p.constraints.row(static_cast<Index>(r)) = rows_[r].transpose();
    p.rhs(static_cast<Index>(r)) = rhs_[r];
  }
}

void add_extension_rows(ConstraintBuilder& builder, std::size_t choi_block,
                        const MatrixFunctional& f) {
  const Index m = f.level;
  for (std::size_t s = 0; s < f.values.size(); ++s) {
    const Matrix& b = f.system->basis()[s];
    for (Index k = 0; k < m; ++k)
      for (Index l = 0; l < m; ++l) {
        Matrix pattern = Matrix::Zero(m, m);
        pattern(l, k) = 1.0;  // Tr[C (b^T (x) E_lk)] = Theta(b)_{kl}
        builder.add_complex_trace(choi_block,
                                  kron(b.transpose().eval(), pattern),
                                  f.values[s](k, l));
      }
  }
}

namespace {

bool zero_diagonal_span(const OperatorSystem& s) {
  for (const Matrix& b : s.basis())
    if (b.diagonal().norm() > 1e-12) return false;
  return true;
}

// See-saw searching for x in the cone unit ball with lambda_min of the image
// below zero; levels up to 2m.
struct Falsification {
  bool found = false;
  MatrixElement witness;
  double min_eig = 0.0;
};

Falsification falsify_cp(const MatrixFunctional& f, double tol,
                         const SeesawOptions& opt) {
  Falsification out;
  SystemPtr sys = f.system;
  const Index d = sys->ambient_dim();
  const Index max_level = 2 * f.level;

  for (Index n = 1; n <= max_level && !out.found; ++n) {
    auto lb = sys->level_basis(n);
    SpectralBoxSet box({{0, 0.0, 1.0}});
    SubspaceSet span(0, lb->herm_onb, /*real_span=*/true);
    SeesawProblem problem;
    problem.sets = {&box, &span};
    problem.objective = SeesawProblem::Objective::TopEigenvalue;
    const Index m = f.level;
    problem.apply = [&](const BlockVec& x) -> Matrix {
      MatrixElement el;
      el.system = sys;
      el.level = n;
      el.concrete = x[0];
      el.coeffs = extract_coeffs(*sys, n, x[0]);
      return -theta_apply(f, el);
    };
    problem.representer = [&](const Vector& left,
                              const Vector& right) -> BlockVec {
      // Re<left, -theta(x) right> as a pairing with x.
      Matrix g = Matrix::Zero(n * d, n * d);
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
          for (Index s = 0; s < sys->dim(); ++s) {
            Cplx w = -(left.segment(i * m, m).adjoint() *
                       f.values[static_cast<size_t>(s)] *
                       right.segment(j * m, m))(0, 0);
            g.block(i * d, j * d, d, d) +=
                std::conj(w) * sys->basis()[static_cast<size_t>(s)];
          }
        }
      return {0.5 * (g + g.adjoint())};
    };

    Rng rng = Rng::stream(opt.seed, "falsify_cp@" + std::to_string(n));
    problem.starts.push_back({Matrix::Identity(n * d, n * d)});
    int random_starts = std::max(2, opt.restarts / 2);
    for (int r = 0; r < random_starts; ++r)
      problem.starts.push_back({random_hermitian(rng, n * d)});

    SeesawOptions local = opt;
    local.restarts = static_cast<int>(problem.starts.size());
    SeesawOutcome run = run_seesaw(problem, local);
    if (run.x.empty()) continue;

    // Certify: exact subspace projection, scaled into the unit ball.
    BlockVec w = run.x;
    span.project(w);
    Matrix x = 0.5 * (w[0] + w[0].adjoint());
    EigResult eig = eig_hermitian(x);
    double hi = eig.values(eig.values.size() - 1);
    if (hi > 1.0) x /= hi;
    double neg = std::max(0.0, -eig_hermitian(x).values(0));

    MatrixElement el;
    el.system = sys;
    el.level = n;
    el.concrete = x;
    el.coeffs = extract_coeffs(*sys, n, x);
    Matrix image = theta_apply(f, el);
    double min_eig = eig_hermitian(0.5 * (image + image.adjoint())).values(0);
    double slack = 10.0 * tol + neg * cb_upper_bound(f);
    if (min_eig < -slack) {
      out.found = true;
      out.witness = std::move(el);
      out.min_eig = min_eig;
    }
  }
  return out;
}

}  // namespace

CpReport is_cp(const MatrixFunctional& f, double tol,
               const SeesawOptions& opt) {
  if (!f.self_adjoint())
    throw std::invalid_argument("is_cp: functional is not self-adjoint");
  CpReport report;
  SystemPtr sys = f.system;
  const Index d = sys->ambient_dim();
  const Index m = f.level;

  // Spans with vanishing diagonals have trivial cones at every level (a PSD
  // matrix with zero diagonal is zero), so every self-adjoint functional is
  // vacuously completely positive.
  if (zero_diagonal_span(*sys)) {
    report.verdict = CpReport::Verdict::Cp;
    report.method = "zero-diagonal-cone";
    return report;
  }

  AffinePSDProblem p;
  p.blocks = {{d * m, kNoCap}};
  ConstraintBuilder builder(p);
  add_extension_rows(builder, 0, f);
  builder.finalize(p);

  FeasibilityResult feas = solve_feasibility(p, tol, defaults::max_iterations);
  report.iterations = feas.iterations;
  if (feas.status == FeasStatus::Feasible) {
    report.verdict = CpReport::Verdict::Cp;
    report.method = "extension";
    ChoiCertificate cert;
    cert.choi = feas.witness[0];
    cert.kind = "extension";
    cert.residual = feas.residual;
    cert.in_dim = d;
    cert.out_dim = m;
    report.certificate = std::move(cert);
    return report;
  }

  Falsification fals = falsify_cp(f, tol, opt);
  if (fals.found) {
    report.verdict = CpReport::Verdict::NotCp;
    report.method = "falsification";
    report.falsification = std::move(fals.witness);
    report.witness_min_eig = fals.min_eig;
    return report;
  }

  report.gap = feas.gap;
  if (sys->unital() || sys->contains_identity()) {
    // Arveson extension from a unital system: no CP extension means not CP.
    report.verdict = CpReport::Verdict::NotCp;
    report.method = "extension-stall";
  } else {
    report.verdict = CpReport::Verdict::Undecided;
    report.method = "extension-stall";
  }
  return report;
}

std::pair<MatrixFunctional, ChoiCertificate> random_cp_functional(
    SystemPtr s, Index m, std::uint64_t seed, std::string_view tag,
    int index) {
  Rng rng = Rng::stream(seed, std::string(tag) + "#" + std::to_string(index) +
                                  "@cp" + std::to_string(m));
  const Index d = s->ambient_dim();
  Matrix g = random_complex_matrix(rng, d * m, d * m);
  Matrix choi = g * g.adjoint();
  choi /= (1.0 + choi.norm());
  ChoiCertificate cert;
  cert.choi = choi;
  cert.kind = "extension";
  cert.residual = 0.0;
  cert.in_dim = d;
  cert.out_dim = m;
  MatrixFunctional f = functional_from_choi(std::move(s), m, choi);
  return {std::move(f), std::move(cert)};
}

}  // namespace opsys
