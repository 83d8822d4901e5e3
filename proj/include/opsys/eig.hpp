// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>

#include "opsys/types.hpp"

namespace opsys {

struct EigResult {
  RealVector values;  // ascending
  Matrix vectors;     // unitary, columns are eigenvectors
};

double frobenius(const Matrix& a);

// ||h - h*||_F relative to 1 + ||h||_F.
double hermitian_defect(const Matrix& h);

bool is_hermitian(const Matrix& h, double rel_tol = 1e-12);

// Throws std::invalid_argument with the asymmetry norm if h is not Hermitian.
void require_hermitian(const Matrix& h, const char* caller);

// Cyclic complex Jacobi eigensolver for Hermitian matrices.
EigResult eig_hermitian(const Matrix& h);

// Frobenius-nearest PSD matrix (negative eigenvalues clipped to zero).
Matrix project_psd(const Matrix& h);

// Eigenvalues clipped into [lo, hi].
Matrix clip_spectrum(const Matrix& h, double lo, double hi);

// Largest singular value.
double operator_norm(const Matrix& a);

// Sum of singular values.
double trace_norm(const Matrix& a);

// Singular values clipped to <= radius (nearest point of the operator-norm
// ball of that radius).
Matrix clip_operator_ball(const Matrix& a, double radius);

// Top singular triple (sigma, u, v) with a = sum sigma_i u_i v_i^*.
struct SingularTriple {
  double sigma;
  Vector left;
  Vector right;
};
SingularTriple top_singular_triple(const Matrix& a);

// Real coordinates of a Hermitian matrix: n diagonal entries followed by
// sqrt(2)*Re and sqrt(2)*Im of the strict upper triangle in row-major order.
// The map is a linear isometry from (Herm(n), <.,.>_F) onto R^{n^2}.
RealVector herm_coords(const Matrix& h);
Matrix herm_from_coords(const RealVector& v, Index n);

}  // namespace opsys
