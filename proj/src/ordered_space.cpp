// SPDX-License-Identifier: Apache-2.0
#include "opsys/ordered_space.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "opsys/simplex.hpp"

namespace opsys {

namespace {

RealMatrix generator_matrix(const OrderedSpace& space) {
  RealMatrix g(space.dim, static_cast<Index>(space.cone_generators.size()));
  for (std::size_t j = 0; j < space.cone_generators.size(); ++j)
    g.col(static_cast<Index>(j)) = space.cone_generators[j];
  return g;
}

void require_polyhedral(const OrderedSpace& space, const char* who) {
  if (space.ball == OrderedSpace::Ball::L2) {
    std::ostringstream os;
    os << who << ": l2 ball is not polyhedral; only linf, l1 and polytope "
          "balls are supported here";
    throw std::invalid_argument(os.str());
  }
}

// Extreme points of the unit ball.
std::vector<RealVector> ball_extreme_points(const OrderedSpace& space) {
  std::vector<RealVector> pts;
  const Index n = space.dim;
  switch (space.ball) {
    case OrderedSpace::Ball::LInf: {
      if (n > 20)
        throw std::invalid_argument(
            "ball_extreme_points: linf ball vertex enumeration is limited to "
            "dimension 20");
      for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
        RealVector v(n);
        for (Index i = 0; i < n; ++i)
          v(i) = (mask >> i) & 1 ? 1.0 : -1.0;
        pts.push_back(v);
      }
      break;
    }
    case OrderedSpace::Ball::L1:
      for (Index i = 0; i < n; ++i) {
        pts.push_back(RealVector::Unit(n, i));
        pts.push_back(-RealVector::Unit(n, i));
      }
      break;
    case OrderedSpace::Ball::Polytope:
      pts = space.ball_vertices;
      break;
    case OrderedSpace::Ball::L2:
      throw std::invalid_argument("ball_extreme_points: l2 ball");
  }
  return pts;
}

// Appends rows expressing "x = G alpha lies in the unit ball" to an
// inequality system over the variables [alpha | extras]; may add auxiliary
// variables (l1 / polytope encodings). Returns the variable count used.
struct BallRows {
  RealMatrix a_ub;
  RealVector b_ub;
  RealMatrix a_eq;
  RealVector b_eq;
  int total_vars;
};

BallRows ball_membership_rows(const OrderedSpace& space, int alpha_offset,
                              int total_vars_before) {
  const Index n = space.dim;
  const int g = static_cast<int>(space.cone_generators.size());
  RealMatrix gen = generator_matrix(space);
  BallRows rows;
  switch (space.ball) {
    case OrderedSpace::Ball::LInf: {
      rows.total_vars = total_vars_before;
      rows.a_ub = RealMatrix::Zero(2 * n, total_vars_before);
      rows.b_ub = RealVector::Ones(2 * n);
      for (Index i = 0; i < n; ++i) {
        rows.a_ub.block(i, alpha_offset, 1, g) = gen.row(i);
        rows.a_ub.block(n + i, alpha_offset, 1, g) = -gen.row(i);
      }
      rows.a_eq = RealMatrix::Zero(0, total_vars_before);
      rows.b_eq = RealVector::Zero(0);
      break;
    }
    case OrderedSpace::Ball::L1: {
      // t_i >= |(G alpha)_i|, sum t <= 1.
      rows.total_vars = total_vars_before + static_cast<int>(n);
      int t0 = total_vars_before;
      rows.a_ub = RealMatrix::Zero(2 * n + 1, rows.total_vars);
      rows.b_ub = RealVector::Zero(2 * n + 1);
      for (Index i = 0; i < n; ++i) {
        rows.a_ub.block(i, alpha_offset, 1, g) = gen.row(i);
        rows.a_ub(i, t0 + i) = -1.0;
        rows.a_ub.block(n + i, alpha_offset, 1, g) = -gen.row(i);
        rows.a_ub(n + i, t0 + i) = -1.0;
      }
      for (Index i = 0; i < n; ++i) rows.a_ub(2 * n, t0 + i) = 1.0;
      rows.b_ub(2 * n) = 1.0;
      rows.a_eq = RealMatrix::Zero(0, rows.total_vars);
      rows.b_eq = RealVector::Zero(0);
      break;
    }
    case OrderedSpace::Ball::Polytope: {
      const int v = static_cast<int>(space.ball_vertices.size());
      rows.total_vars = total_vars_before + v;
      int beta0 = total_vars_before;
      rows.a_eq = RealMatrix::Zero(n, rows.total_vars);
      rows.b_eq = RealVector::Zero(n);
      for (Index i = 0; i < n; ++i) {
        rows.a_eq.block(i, alpha_offset, 1, g) = gen.row(i);
        for (int j = 0; j < v; ++j)
          rows.a_eq(i, beta0 + j) = -space.ball_vertices[static_cast<size_t>(j)](i);
      }
      rows.a_ub = RealMatrix::Zero(1, rows.total_vars);
      rows.b_ub = RealVector::Ones(1);
      for (int j = 0; j < v; ++j) rows.a_ub(0, beta0 + j) = 1.0;
      break;
    }
    case OrderedSpace::Ball::L2:
      throw std::invalid_argument("ball_membership_rows: l2 ball");
  }
  return rows;
}

RealMatrix vstack(const RealMatrix& a, const RealMatrix& b, int cols) {
  RealMatrix out(a.rows() + b.rows(), cols);
  if (a.rows()) out.topRows(a.rows()).leftCols(a.cols()) = a;
  if (a.rows() && a.cols() < cols)
    out.topRows(a.rows()).rightCols(cols - a.cols()).setZero();
  if (b.rows()) out.bottomRows(b.rows()) = b;
  return out;
}

RealVector vcat(const RealVector& a, const RealVector& b) {
  RealVector out(a.size() + b.size());
  out << a, b;
  return out;
}

}  // namespace

void validate(const OrderedSpace& space) {
  if (space.dim <= 0) throw std::invalid_argument("OrderedSpace: dim <= 0");
  for (const RealVector& g : space.cone_generators) {
    if (g.size() != space.dim)
      throw std::invalid_argument("OrderedSpace: generator length mismatch");
    if (g.norm() <= 1e-12)
      throw std::invalid_argument("OrderedSpace: zero cone generator");
  }
  if (space.ball == OrderedSpace::Ball::Polytope) {
    if (space.ball_vertices.empty())
      throw std::invalid_argument("OrderedSpace: empty polytope ball");
    for (const RealVector& v : space.ball_vertices) {
      if (v.size() != space.dim)
        throw std::invalid_argument("OrderedSpace: vertex length mismatch");
      if (v.norm() <= 1e-12)
        throw std::invalid_argument("OrderedSpace: zero polytope vertex");
      bool has_neg = false;
      for (const RealVector& w : space.ball_vertices)
        if ((v + w).norm() <= 1e-9) {
          has_neg = true;
          break;
        }
      if (!has_neg)
        throw std::invalid_argument(
            "OrderedSpace: polytope ball is not symmetric");
    }
  }
}

double flat_norm(const RealVector& f, const OrderedSpace& space) {
  validate(space);
  require_polyhedral(space, "flat_norm");
  if (f.size() != space.dim)
    throw std::invalid_argument("flat_norm: functional length mismatch");
  if (space.cone_generators.empty()) return 0.0;

  const int g = static_cast<int>(space.cone_generators.size());
  RealMatrix gen = generator_matrix(space);
  BallRows rows = ball_membership_rows(space, 0, g);
  RealVector obj = RealVector::Zero(rows.total_vars);
  obj.head(g) = gen.transpose() * f;

  double best = 0.0;
  for (double sign : {1.0, -1.0}) {
    LPResult r = lp_maximize(rows.a_ub, rows.b_ub, rows.a_eq, rows.b_eq,
                             (sign * obj).eval());
    if (r.status == LPStatus::Unbounded)
      throw std::invalid_argument("flat_norm: unbounded LP, malformed space");
    if (r.status == LPStatus::Optimal) best = std::max(best, r.value);
  }
  return best;
}

double ball_norm(const RealVector& f, const OrderedSpace& space) {
  validate(space);
  require_polyhedral(space, "ball_norm");
  switch (space.ball) {
    case OrderedSpace::Ball::LInf:
      return f.cwiseAbs().sum();
    case OrderedSpace::Ball::L1:
      return f.cwiseAbs().maxCoeff();
    case OrderedSpace::Ball::Polytope: {
      double best = 0.0;
      for (const RealVector& v : space.ball_vertices)
        best = std::max(best, f.dot(v));
      return best;
    }
    case OrderedSpace::Ball::L2:
      break;
  }
  throw std::invalid_argument("ball_norm: l2 ball");
}

double decomposition_radius(const OrderedSpace& space) {
  validate(space);
  require_polyhedral(space, "decomposition_radius");
  if (space.cone_generators.empty()) return 0.0;

  const int g = static_cast<int>(space.cone_generators.size());
  const Index n = space.dim;
  RealMatrix gen = generator_matrix(space);
  std::vector<RealVector> vertices = ball_extreme_points(space);

  double radius = std::numeric_limits<double>::infinity();
  for (const RealVector& b : vertices) {
    // Variables: [eps | alpha1 | alpha2 | ball extras...]
    int base_vars = 1 + 2 * g;
    BallRows ball1 = ball_membership_rows(space, 1, base_vars);
    BallRows ball2 = ball_membership_rows(space, 1 + g, ball1.total_vars);
    int total = ball2.total_vars;

    RealMatrix a_eq = RealMatrix::Zero(n, total);
    RealVector b_eq = RealVector::Zero(n);
    for (Index i = 0; i < n; ++i) {
      a_eq(i, 0) = b(i);
      a_eq.block(i, 1, 1, g) = -gen.row(i);
      a_eq.block(i, 1 + g, 1, g) = gen.row(i);
    }
    a_eq = vstack(a_eq, vstack(ball1.a_eq, ball2.a_eq, total), total);
    b_eq = vcat(b_eq, vcat(ball1.b_eq, ball2.b_eq));
    RealMatrix a_ub = vstack(ball1.a_ub, ball2.a_ub, total);
    RealVector b_ub = vcat(ball1.b_ub, ball2.b_ub);

    RealVector obj = RealVector::Zero(total);
    obj(0) = 1.0;
    LPResult r = lp_maximize(a_ub, b_ub, a_eq, b_eq, obj);
    if (r.status == LPStatus::Unbounded)
      throw std::invalid_argument(
          "decomposition_radius: unbounded LP, malformed space");
    double eps = r.status == LPStatus::Optimal ? r.value : 0.0;
    radius = std::min(radius, eps);
    if (radius <= 1e-12) return 0.0;
  }
  return radius;
}

OrderUnitReport order_unit_check(const RealVector& u,
                                 const OrderedSpace& space) {
  validate(space);
  if (u.size() != space.dim)
    throw std::invalid_argument("order_unit_check: length mismatch");
  const int g = static_cast<int>(space.cone_generators.size());
  const Index n = space.dim;
  RealMatrix gen = generator_matrix(space);

  // Membership of u itself: u = G beta, beta >= 0.
  {
    RealMatrix a_eq(n, g);
    for (Index i = 0; i < n; ++i) a_eq.row(i) = gen.row(i);
    LPResult r = lp_maximize(RealMatrix::Zero(0, g), RealVector::Zero(0), a_eq,
                             u, RealVector::Zero(g));
    if (r.status != LPStatus::Optimal)
      throw std::invalid_argument("order_unit_check: u is not in the cone");
  }

  OrderUnitReport report;
  report.is_unit = true;

  // Per generator: minimize alpha with alpha*u - generator in the cone.
  for (const RealVector& gk : space.cone_generators) {
    RealMatrix a_eq = RealMatrix::Zero(n, 1 + g);
    for (Index i = 0; i < n; ++i) {
      a_eq(i, 0) = u(i);
      a_eq.block(i, 1, 1, g) = -gen.row(i);
    }
    RealVector obj = RealVector::Zero(1 + g);
    obj(0) = -1.0;  // maximize -alpha == minimize alpha
    LPResult r = lp_maximize(RealMatrix::Zero(0, 1 + g), RealVector::Zero(0),
                             a_eq, gk, obj);
    if (r.status != LPStatus::Optimal) {
      report.is_unit = false;
      report.obstruction = gk;
      break;
    }
  }

  // Forced l1 mass: min sum t over v = G beta0 in the cone with
  // v - g_k in the cone for every generator g_k and -t <= v <= t.
  if (g > 0) {
    int vars = static_cast<int>(n) /*t*/ + g /*beta0*/ + g * g /*beta_k*/;
    int t0 = 0, b0 = static_cast<int>(n);
    RealMatrix a_ub = RealMatrix::Zero(2 * n, vars);
    RealVector b_ub = RealVector::Zero(2 * n);
    for (Index i = 0; i < n; ++i) {
      // (G beta0)_i - t_i <= 0 and -(G beta0)_i - t_i <= 0
      a_ub.block(i, b0, 1, g) = gen.row(i);
      a_ub(i, t0 + i) = -1.0;
      a_ub.block(n + i, b0, 1, g) = -gen.row(i);
      a_ub(n + i, t0 + i) = -1.0;
    }
    RealMatrix a_eq = RealMatrix::Zero(n * g, vars);
    RealVector b_eq = RealVector::Zero(n * g);
    for (int k = 0; k < g; ++k) {
      int bk = b0 + g + k * g;
      for (Index i = 0; i < n; ++i) {
        a_eq.block(k * n + i, b0, 1, g) = gen.row(i);
        a_eq.block(k * n + i, bk, 1, g) -= gen.row(i);
        b_eq(k * n + i) = space.cone_generators[static_cast<size_t>(k)](i);
      }
    }
    RealVector obj = RealVector::Zero(vars);
    for (Index i = 0; i < n; ++i) obj(t0 + i) = -1.0;
    LPResult r = lp_maximize(a_ub, b_ub, a_eq, b_eq, obj);
    if (r.status == LPStatus::Optimal) {
      report.forced_l1_mass = -r.value;
    } else {
      report.mass_bounded = false;
      report.forced_l1_mass = std::numeric_limits<double>::infinity();
    }
  }
  return report;
}

}  // namespace opsys
