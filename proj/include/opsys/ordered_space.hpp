// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "opsys/system.hpp"
#include "opsys/types.hpp"

namespace opsys {

struct MatrixFunctional;

// Finite-dimensional ordered space with a polyhedral cone given by
// generators and a symmetric unit ball. Serves as the exact LP layer that
// commutative operator systems are checked against.
struct OrderedSpace {
  enum class Ball { LInf, L1, L2, Polytope };

  Index dim = 0;
  std::vector<RealVector> cone_generators;
  Ball ball = Ball::LInf;
  std::vector<RealVector> ball_vertices;  // for Ball::Polytope
  std::string label;
};

// Throws on malformed data: zero generators, asymmetric polytope balls.
void validate(const OrderedSpace& space);

// sup { |f(x)| : x in cone intersected with the unit ball }, exact via two
// LPs. Requires polyhedral ball data (L2 is rejected).
double flat_norm(const RealVector& f, const OrderedSpace& space);

// sup { f(x) : x in the unit ball }, the plain dual norm, via LP.
double ball_norm(const RealVector& f, const OrderedSpace& space);

// Largest eps with eps * ball contained in (cone cap ball) - (cone cap ball);
// one LP per extreme point of the ball.
double decomposition_radius(const OrderedSpace& space);

struct OrderUnitReport {
  bool is_unit = false;
  // Generator that cannot be dominated by any multiple of u, when one exists.
  std::optional<RealVector> obstruction;
  // Minimal l1 mass of a single cone element dominating every generator
  // (the scale-one normalization of the domination constraints).
  double forced_l1_mass = 0.0;
  bool mass_bounded = true;
};

// u must lie in the cone; throws otherwise.
OrderUnitReport order_unit_check(const RealVector& u,
                                 const OrderedSpace& space);

struct OracleComparison {
  double d_norm = 0.0;
  double flat = 0.0;
  double dual_norm = 0.0;
  double ball_lp = 0.0;
  double d_gap = 0.0;
  double dual_gap = 0.0;
  bool matches = false;
};

// Maps a diagonal system onto its ordered-space shadow and compares the
// matrix-level norms of a scalar self-adjoint functional with the LP values.
// Rejects non-commutative systems and non-diagonal spans.
OracleComparison oracle_compare(const SystemPtr& system,
                                const MatrixFunctional& f, int level_cap,
                                double tol);

// The ordered-space shadow of a diagonal system (span must be the full
// diagonal algebra in some common eigenbasis).
OrderedSpace diagonal_shadow(const OperatorSystem& system);

// Coordinates of a scalar functional in the common eigenbasis.
RealVector diagonal_functional_shadow(const OperatorSystem& system,
                                      const MatrixFunctional& f);

}  // namespace opsys
