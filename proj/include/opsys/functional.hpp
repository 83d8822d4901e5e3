// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "opsys/system.hpp"

namespace opsys {

// Element f of M_m(S*), stored through the matrices F_s = [f_kl(b_s)] over
// the system's (Hermitian, orthonormal) basis. theta_f is the map
// x -> [f_kl(x)]; its amplifications pair f with level-n elements.
struct MatrixFunctional {
  SystemPtr system;
  Index level = 1;              // m
  std::vector<Matrix> values;   // per basis item: m x m matrix F_s

  // With a Hermitian basis, f* has values F_s^dagger; f is self-adjoint when
  // every F_s is Hermitian.
  bool self_adjoint(double tol = 1e-9) const;
};

MatrixFunctional functional_from_values(SystemPtr s, Index m,
                                        std::vector<Matrix> values);

MatrixFunctional adjoint(const MatrixFunctional& f);
MatrixFunctional operator+(const MatrixFunctional& a,
                           const MatrixFunctional& b);
MatrixFunctional operator-(const MatrixFunctional& a,
                           const MatrixFunctional& b);
MatrixFunctional operator*(Cplx scale, const MatrixFunctional& f);

// theta_f^{(n)}(x): the nm x nm block matrix with (i,j) scalar block
// [f_kl(x_ij)]. Bilinear in (f, x); systems must match.
Matrix theta_apply(const MatrixFunctional& f, const MatrixElement& x);

// theta_f on a single d x d matrix from the span.
Matrix theta_on_span(const MatrixFunctional& f, const Matrix& x);

// Frobenius representer R_kl in the span with f_kl = <R_kl, .>_F.
Matrix representer(const MatrixFunctional& f, Index k, Index l);

// Crude but certain upper bound for ||theta_f||_cb: sum of the trace norms
// of the Frobenius representers.
double cb_upper_bound(const MatrixFunctional& f);

// Dual of the s-th basis element: scalar functional with f(b_t) = delta_st.
MatrixFunctional basis_dual(SystemPtr s, Index basis_index);

// Seeded random functional with Hermitian value matrices (self-adjoint f).
MatrixFunctional random_selfadjoint_functional(SystemPtr s, Index m,
                                               std::uint64_t seed,
                                               std::string_view tag,
                                               int index);

double functional_distance(const MatrixFunctional& a,
                           const MatrixFunctional& b);

}  // namespace opsys
