// SPDX-License-Identifier: Apache-2.0
#include "opsys/norms.hpp"

#include <cmath>

#include "opsys/eig.hpp"
#include "opsys/rng.hpp"

namespace opsys {

namespace {

double functional_scale(const MatrixFunctional& f) {
  double s = 0.0;
  for (const Matrix& v : f.values) s += v.squaredNorm();
  return std::sqrt(s);
}

MatrixElement element_of(const SystemPtr& sys, Index n, const Matrix& x) {
  MatrixElement el;
  el.system = sys;
  el.level = n;
  el.concrete = x;
  el.coeffs = extract_coeffs(*sys, n, x);
  return el;
}

// Direction matrix G with Re<G, x>_F = Re< left, theta_f^{(n)}(x) right >.
Matrix theta_direction(const MatrixFunctional& f, Index n, const Vector& left,
                       const Vector& right) {
  const SystemPtr& sys = f.system;
  const Index d = sys->ambient_dim();
  const Index m = f.level;
  Matrix g = Matrix::Zero(n * d, n * d);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index s = 0; s < sys->dim(); ++s) {
        Cplx w = (left.segment(i * m, m).adjoint() *
                  f.values[static_cast<size_t>(s)] *
                  right.segment(j * m, m))(0, 0);
        g.block(i * d, j * d, d, d) +=
            std::conj(w) * sys->basis()[static_cast<size_t>(s)];
      }
  return g;
}

struct CertifiedValue {
  double value = 0.0;
  double residual = 0.0;
  Matrix x;
};

// Exact subspace projection followed by a scale into the unit ball; the
// value is evaluated at the certified point, so it is a true lower bound up
// to the reported residual (distance past the cone).
CertifiedValue certify_cone_witness(const MatrixFunctional& f, Index n,
                                    const SubspaceSet& span, Matrix x) {
  BlockVec w = {std::move(x)};
  span.project(w);
  Matrix h = 0.5 * (w[0] + w[0].adjoint());
  EigResult eig = eig_hermitian(h);
  double hi = eig.values(eig.values.size() - 1);
  if (hi > 1.0) h /= hi;
  CertifiedValue out;
  out.residual = std::max(0.0, -eig_hermitian(h).values(0));
  out.value = operator_norm(theta_apply(f, element_of(f.system, n, h)));
  out.x = std::move(h);
  return out;
}

CertifiedValue certify_ball_witness(const MatrixFunctional& f, Index n,
                                    const SubspaceSet& span, Matrix x) {
  BlockVec w = {std::move(x)};
  span.project(w);
  double norm = operator_norm(w[0]);
  if (norm > 1.0) w[0] /= norm;
  CertifiedValue out;
  out.value = operator_norm(theta_apply(f, element_of(f.system, n, w[0])));
  out.x = std::move(w[0]);
  return out;
}

}  // namespace

NormReport d_norm(const MatrixFunctional& f, int level_max,
                  const SeesawOptions& opt) {
  NormReport report;
  report.method = "see-saw";
  report.tolerance = opt.tol;
  report.restarts = opt.restarts;
  if (level_max < 1) throw std::invalid_argument("d_norm: level_max >= 1");
  if (functional_scale(f) < 1e-14) {
    for (int n = 1; n <= level_max; ++n) report.per_level.emplace_back(n, 0.0);
    return report;
  }

  SystemPtr sys = f.system;
  const Index d = sys->ambient_dim();
  Matrix prev_witness;  // certified witness of the previous level

  for (Index n = 1; n <= level_max; ++n) {
    auto lb = sys->level_basis(n);
    SpectralBoxSet box({{0, 0.0, 1.0}});
    SubspaceSet span(0, lb->herm_onb, /*real_span=*/true);

    SeesawProblem problem;
    problem.sets = {&box, &span};
    problem.objective = SeesawProblem::Objective::Norm;
    problem.apply = [&](const BlockVec& x) {
      return theta_apply(f, element_of(sys, n, x[0]));
    };
    problem.representer = [&](const Vector& left, const Vector& right) {
      Matrix g = theta_direction(f, n, left, right);
      return BlockVec{0.5 * (g + g.adjoint())};
    };

    if (prev_witness.size() > 0) {
      Matrix padded = Matrix::Zero(n * d, n * d);
      padded.topLeftCorner(prev_witness.rows(), prev_witness.cols()) =
          prev_witness;
      problem.starts.push_back({padded});
    }
    if (sys->contains_identity())
      problem.starts.push_back({Matrix::Identity(n * d, n * d)});
    Rng rng = Rng::stream(opt.seed, "d_norm@" + std::to_string(n));
    while (static_cast<int>(problem.starts.size()) < opt.restarts)
      problem.starts.push_back({random_hermitian(rng, n * d)});

    SeesawOutcome run = run_seesaw(problem, opt);

    double level_value = 0.0;
    if (!run.x.empty()) {
      CertifiedValue cert = certify_cone_witness(f, n, span, run.x[0]);
      level_value = cert.value;
      double prev_value = report.per_level.empty()
                              ? -1.0
                              : report.per_level.back().second;
      if (level_value >= prev_value) {
        prev_witness = cert.x;
        report.residual = cert.residual;
        report.level_used = static_cast<int>(n);
        report.witness_element = element_of(sys, n, cert.x);
        report.witness_left = run.left;
        report.witness_right = run.right;
      } else {
        // Keep the certified witness from the previous level (padded), which
        // realises at least the previous value at this level too.
        level_value = prev_value;
        Matrix padded = Matrix::Zero(n * d, n * d);
        padded.topLeftCorner(prev_witness.rows(), prev_witness.cols()) =
            prev_witness;
        prev_witness = padded;
      }
    }
    if (!report.per_level.empty())
      level_value = std::max(level_value, report.per_level.back().second);
    report.per_level.emplace_back(static_cast<int>(n), level_value);
    report.value = level_value;
    if (report.value >= opt.known_upper - 1e-9) {
      for (Index rest = n + 1; rest <= level_max; ++rest)
        report.per_level.emplace_back(static_cast<int>(rest), report.value);
      break;
    }
  }
  return report;
}

NormReport smith_norm(const MatrixFunctional& f, const SeesawOptions& opt) {
  NormReport report;
  report.method = "see-saw";
  report.tolerance = opt.tol;
  report.restarts = opt.restarts;
  if (functional_scale(f) < 1e-14) return report;

  SystemPtr sys = f.system;
  const Index d = sys->ambient_dim();
  const Index n = f.level;  // the cb norm is attained at the functional level
  auto lb = sys->level_basis(n);
  OperatorBallSet ball(0, 1.0);
  SubspaceSet span(0, lb->complex_onb, /*real_span=*/false);

  SeesawProblem problem;
  problem.sets = {&ball, &span};
  problem.objective = SeesawProblem::Objective::Norm;
  problem.apply = [&](const BlockVec& x) {
    return theta_apply(f, element_of(sys, n, x[0]));
  };
  problem.representer = [&](const Vector& left, const Vector& right) {
    return BlockVec{theta_direction(f, n, left, right)};
  };

  if (sys->contains_identity())
    problem.starts.push_back({Matrix::Identity(n * d, n * d)});
  Rng rng = Rng::stream(opt.seed, "smith_norm@" + std::to_string(n));
  while (static_cast<int>(problem.starts.size()) < opt.restarts) {
    Matrix g = random_complex_matrix(rng, n * d, n * d);
    problem.starts.push_back({g});
  }

  SeesawOptions local = opt;
  if (!std::isfinite(local.known_upper))
    local.known_upper = cb_upper_bound(f);
  SeesawOutcome run = run_seesaw(problem, local);
  if (!run.x.empty()) {
    CertifiedValue cert = certify_ball_witness(f, n, span, run.x[0]);
    report.value = cert.value;
    report.level_used = static_cast<int>(n);
    report.witness_element = element_of(sys, n, cert.x);
    report.witness_left = run.left;
    report.witness_right = run.right;
    report.restarts = run.restarts_used;
  }
  return report;
}

namespace {

// Skeleton of the cb-norm feasibility: one 2m-output Choi block whose
// (1,2) corner extends theta_f, plus capped blocks pinned to the partial
// traces of the two diagonal corners.
struct CbSdp {
  AffinePSDProblem problem;
  std::shared_ptr<const AffineOperator> factorization;
  Index d, m;
};

CbSdp build_cb_sdp(const MatrixFunctional& f) {
  CbSdp sdp;
  sdp.d = f.system->ambient_dim();
  sdp.m = f.level;
  const Index d = sdp.d, m = sdp.m;
  sdp.problem.blocks = {{d * 2 * m, kNoCap}, {m, 1.0}, {m, 1.0}};

  ConstraintBuilder builder(sdp.problem);
  // Corner read-out rows: Theta(b_s)_{kl} lives at (1,k) x (2,l).
  for (std::size_t s = 0; s < f.values.size(); ++s) {
    const Matrix& b = f.system->basis()[s];
    for (Index k = 0; k < m; ++k)
      for (Index l = 0; l < m; ++l) {
        Matrix pattern = Matrix::Zero(2 * m, 2 * m);
        pattern(m + l, k) = 1.0;
        builder.add_complex_trace(0, kron(b.transpose().eval(), pattern),
                                  f.values[s](k, l));
      }
  }
  // Partial traces of the diagonal corners.
  auto corner_link = [&](Index corner, std::size_t z_block) {
    auto pattern_row = [&](const Matrix& p) {
      Matrix q = Matrix::Zero(2 * m, 2 * m);
      q.block(corner * m, corner * m, m, m) = p;
      builder.add_pairing({{0, kron(Matrix::Identity(d, d), q)},
                           {z_block, (-p).eval()}},
                          0.0);
    };
    for (Index k = 0; k < m; ++k) {
      Matrix p = Matrix::Zero(m, m);
      p(k, k) = 1.0;
      pattern_row(p);
    }
    const double s2 = 1.0 / std::sqrt(2.0);
    for (Index k = 0; k < m; ++k)
      for (Index l = k + 1; l < m; ++l) {
        Matrix p = Matrix::Zero(m, m);
        p(k, l) = s2;
        p(l, k) = s2;
        pattern_row(p);
        p(k, l) = Cplx(0, s2);
        p(l, k) = Cplx(0, -s2);
        pattern_row(p);
      }
  };
  corner_link(0, 1);
  corner_link(1, 2);
  builder.finalize(sdp.problem);
  sdp.factorization = make_affine_operator(sdp.problem.constraints);
  return sdp;
}

}  // namespace

NormReport dual_norm(const MatrixFunctional& f, double tol,
                     const SeesawOptions& opt) {
  NormReport report;
  report.method = "extension-sdp";
  report.tolerance = tol;
  report.level_used = static_cast<int>(f.level);
  if (functional_scale(f) < 1e-14) {
    report.crosscheck = 0.0;
    return report;
  }

  SeesawOptions seesaw_opt = opt;
  NormReport lower = smith_norm(f, seesaw_opt);
  const double upper0 = cb_upper_bound(f);
  report.crosscheck = lower.value;
  report.witness_element = lower.witness_element;

  CbSdp sdp = build_cb_sdp(f);
  const double feas_tol = std::max(tol * 1e-2, 1e-10);

  BlockVec warm;
  ChoiCertificate cert;
  bool have_cert = false;
  auto feasible_at = [&](double t) {
    sdp.problem.blocks[1].cap = t;
    sdp.problem.blocks[2].cap = t;
    FeasibilityResult r =
        solve_feasibility(sdp.problem, feas_tol, defaults::max_iterations,
                          warm.empty() ? nullptr : &warm, sdp.factorization);
    if (r.status == FeasStatus::Feasible) {
      warm = r.witness;
      cert.choi = r.witness[0];
      cert.kind = "extension";
      cert.residual = r.residual;
      cert.in_dim = sdp.d;
      cert.out_dim = 2 * sdp.m;
      have_cert = true;
      return true;
    }
    return false;
  };

  // Ladder over the certified lower bound, then bisection inside the last
  // rung. The see-saw and the SDP both compute the cb norm, so the first
  // rung almost always succeeds.
  double lo = std::max(lower.value, 0.0);
  double hi = upper0;
  const double base = std::max(lo, 1e-6 * (1.0 + upper0));
  bool found = false;
  double prev_rung = lo;
  for (double eps : {1e-7, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 0.1, 0.3, 1.0, 3.0}) {
    double t = base * (1.0 + eps);
    if (t >= upper0) break;
    if (feasible_at(t)) {
      hi = t;
      lo = prev_rung;
      found = true;
      break;
    }
    prev_rung = t;
  }
  if (!found) {
    if (feasible_at(upper0)) {
      hi = upper0;
      lo = prev_rung;
    } else {
      // The crude bound must be feasible; treat the stall as the answer.
      report.value = upper0;
      report.residual = -1.0;
      return report;
    }
  }

  while (hi - lo > std::max(tol, 1e-9 * (1.0 + hi))) {
    double mid = 0.5 * (lo + hi);
    if (feasible_at(mid))
      hi = mid;
    else
      lo = mid;
  }

  report.value = hi;
  report.residual = have_cert ? cert.residual : 0.0;
  if (have_cert) report.witness_choi = std::move(cert);
  return report;
}

RatioReport ratio_report(const MatrixFunctional& f, int level_max, double tol,
                         const SeesawOptions& opt) {
  RatioReport report;
  report.flagged =
      f.system->contains_identity() || f.system->is_algebra();
  report.dual = dual_norm(f, tol, opt);
  SeesawOptions dopt = opt;
  dopt.known_upper = report.dual.value + tol;  // d-norm never exceeds the norm
  report.dnorm = d_norm(f, level_max, dopt);

  if (report.dnorm.value <= tol) {
    if (report.dual.value > tol) {
      report.overflow = true;
      report.ratio = std::numeric_limits<double>::infinity();
    } else {
      report.ratio = 1.0;
    }
  } else {
    report.ratio = report.dual.value / report.dnorm.value;
  }
  return report;
}

NormReport bidual_norm(const MatrixElement& z, int level_max,
                       const SeesawOptions& opt) {
  NormReport report;
  report.method = "see-saw";
  report.tolerance = opt.tol;
  report.restarts = opt.restarts;
  if (level_max < 1)
    throw std::invalid_argument("bidual_norm: level_max >= 1");

  SystemPtr sys = z.system;
  const Index d = sys->ambient_dim();
  const Index k = z.level;
  const double znorm = element_norm(z);
  if (znorm < 1e-14) {
    for (int n = 1; n <= level_max; ++n) report.per_level.emplace_back(n, 0.0);
    return report;
  }

  auto z_block = [&](Index i, Index j) {
    return z.concrete.block(i * d, j * d, d, d);
  };

  Matrix prev_choi;  // certified witness from the previous level
  for (Index n = 1; n <= level_max; ++n) {
    AffinePSDProblem p;
    p.blocks = {{d * n, kNoCap}, {n, 1.0}};
    ConstraintBuilder builder(p);
    builder.add_partial_trace_link(0, d, n, 1);
    builder.finalize(p);
    auto fac = make_affine_operator(p.constraints);
    BlockLayout layout = p.layout();

    SpectralBoxSet cone({{0, 0.0, kNoCap}, {1, 0.0, 1.0}});
    AffineSet link(layout, fac, p.rhs);
    SeesawProblem problem;
    problem.sets = {&cone, &link};
    problem.objective = SeesawProblem::Objective::Norm;

    // T(C)_{(i,u),(j,v)} = Theta_C(z_ij)_{uv}: the image of z under the
    // amplified functional read off the Choi block.
    problem.apply = [&](const BlockVec& x) {
      Matrix t = Matrix::Zero(k * n, k * n);
      for (Index i = 0; i < k; ++i)
        for (Index j = 0; j < k; ++j)
          t.block(i * n, j * n, n, n) = apply_choi(x[0], d, n, z_block(i, j));
      return t;
    };
    problem.representer = [&](const Vector& left, const Vector& right) {
      Matrix w = Matrix::Zero(d * n, d * n);
      for (Index i = 0; i < k; ++i)
        for (Index j = 0; j < k; ++j) {
          Matrix outer = left.segment(i * n, n).conjugate() *
                         right.segment(j * n, n).transpose();
          w += kron(z_block(i, j), outer);
        }
      Matrix g = w.conjugate();
      return BlockVec{0.5 * (g + g.adjoint()).eval(),
                      Matrix::Zero(n, n)};
    };

    // Structured starts: identity-compression Choi matrices aligned with the
    // ambient space, padded previous witness, seeded random CP starts.
    if (prev_choi.size() > 0) {
      Matrix padded = Matrix::Zero(d * n, d * n);
      // Embed M_d (x) M_{n-1} into M_d (x) M_n block-wise.
      const Index pn = n - 1;
      for (Index a = 0; a < d; ++a)
        for (Index b = 0; b < d; ++b)
          padded.block(a * n, b * n, pn, pn) =
              prev_choi.block(a * pn, b * pn, pn, pn);
      problem.starts.push_back({padded, Matrix::Identity(n, n)});
    }
    {
      Matrix v = Matrix::Zero(d, n);
      for (Index c = 0; c < std::min(d, n); ++c) v(c, c) = 1.0;
      problem.starts.push_back(
          {compression_choi(v), Matrix::Identity(n, n)});
    }
    Rng rng = Rng::stream(opt.seed, "bidual@" + std::to_string(n));
    while (static_cast<int>(problem.starts.size()) < opt.restarts) {
      Matrix g = random_complex_matrix(rng, d * n, d * n);
      Matrix c = g * g.adjoint();
      problem.starts.push_back({c / (1.0 + operator_norm(c)),
                                Matrix::Identity(n, n)});
    }

    SeesawOptions local = opt;
    local.known_upper = std::min(opt.known_upper, znorm + 1e-12);
    SeesawOutcome run = run_seesaw(problem, local);

    double level_value = 0.0;
    if (!run.x.empty()) {
      // Certify: exact PSD projection, then scale by the unit-image norm.
      Matrix c = project_psd(0.5 * (run.x[0] + run.x[0].adjoint()));
      Matrix unit_image = Matrix::Zero(n, n);
      for (Index a = 0; a < d; ++a) unit_image += c.block(a * n, a * n, n, n);
      double cap = operator_norm(unit_image);
      if (cap > 1.0) c /= cap;
      BlockVec state = {c, Matrix::Zero(n, n)};
      level_value = operator_norm(problem.apply(state));
      if (report.per_level.empty() ||
          level_value >= report.per_level.back().second) {
        prev_choi = c;
        report.level_used = static_cast<int>(n);
        ChoiCertificate cert;
        cert.choi = c;
        cert.kind = "cp-witness";
        cert.residual = 0.0;
        cert.in_dim = d;
        cert.out_dim = n;
        report.witness_choi = std::move(cert);
        report.witness_left = run.left;
        report.witness_right = run.right;
      }
    }
    if (!report.per_level.empty())
      level_value = std::max(level_value, report.per_level.back().second);
    report.per_level.emplace_back(static_cast<int>(n), level_value);
    report.value = level_value;
    if (report.value >= local.known_upper - 1e-10) {
      for (Index rest = n + 1; rest <= level_max; ++rest)
        report.per_level.emplace_back(static_cast<int>(rest), report.value);
      break;
    }
  }
  return report;
}

}  // namespace opsys
