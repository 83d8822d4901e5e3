// SPDX-License-Identifier: Apache-2.0
#include "opsys/functional.hpp"

#include <sstream>
#include <stdexcept>

#include "opsys/eig.hpp"
#include "opsys/rng.hpp"

namespace opsys {

bool MatrixFunctional::self_adjoint(double tol) const {
  for (const Matrix& v : values)
    if ((v - v.adjoint()).norm() > tol * (1.0 + v.norm())) return false;
  return true;
}

MatrixFunctional functional_from_values(SystemPtr s, Index m,
                                        std::vector<Matrix> values) {
  if (!s) throw std::invalid_argument("functional_from_values: null system");
  if (static_cast<Index>(values.size()) != s->dim())
    throw std::invalid_argument(
        "functional_from_values: one value matrix per basis item required");
  for (const Matrix& v : values)
    if (v.rows() != m || v.cols() != m)
      throw std::invalid_argument(
          "functional_from_values: value matrices must be m x m");
  MatrixFunctional f;
  f.system = std::move(s);
  f.level = m;
  f.values = std::move(values);
  return f;
}

MatrixFunctional adjoint(const MatrixFunctional& f) {
  MatrixFunctional g = f;
  for (Matrix& v : g.values) v = v.adjoint().eval();
  return g;
}

namespace {
void require_same_space(const MatrixFunctional& a, const MatrixFunctional& b,
                        const char* who) {
  if (!same_system(*a.system, *b.system) || a.level != b.level)
    throw std::invalid_argument(std::string(who) +
                                ": functionals from different spaces");
}
}  // namespace

MatrixFunctional operator+(const MatrixFunctional& a,
                           const MatrixFunctional& b) {
  require_same_space(a, b, "operator+");
  MatrixFunctional r = a;
  for (std::size_t s = 0; s < r.values.size(); ++s) r.values[s] += b.values[s];
  return r;
}

MatrixFunctional operator-(const MatrixFunctional& a,
                           const MatrixFunctional& b) {
  require_same_space(a, b, "operator-");
  MatrixFunctional r = a;
  for (std::size_t s = 0; s < r.values.size(); ++s) r.values[s] -= b.values[s];
  return r;
}

MatrixFunctional operator*(Cplx scale, const MatrixFunctional& f) {
  MatrixFunctional r = f;
  for (Matrix& v : r.values) v *= scale;
  return r;
}

Matrix theta_apply(const MatrixFunctional& f, const MatrixElement& x) {
  if (!same_system(*f.system, *x.system))
    throw std::invalid_argument("theta_apply: system mismatch");
  const Index n = x.level;
  const Index m = f.level;
  Matrix out = Matrix::Zero(n * m, n * m);
  for (std::size_t s = 0; s < f.values.size(); ++s)
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) {
        Cplx c = x.coeffs[s](i, j);
        if (c != Cplx(0, 0))
          out.block(i * m, j * m, m, m) += c * f.values[s];
      }
  return out;
}

Matrix theta_on_span(const MatrixFunctional& f, const Matrix& x) {
  Vector c = f.system->expand(x);
  Matrix out = Matrix::Zero(f.level, f.level);
  for (std::size_t s = 0; s < f.values.size(); ++s)
    out += c(static_cast<Index>(s)) * f.values[s];
  return out;
}

Matrix representer(const MatrixFunctional& f, Index k, Index l) {
  const Index d = f.system->ambient_dim();
  Matrix r = Matrix::Zero(d, d);
  for (std::size_t s = 0; s < f.values.size(); ++s)
    r += std::conj(f.values[s](k, l)) * f.system->basis()[s];
  return r;
}

double cb_upper_bound(const MatrixFunctional& f) {
  double bound = 0.0;
  for (Index k = 0; k < f.level; ++k)
    for (Index l = 0; l < f.level; ++l) bound += trace_norm(representer(f, k, l));
  return bound;
}

MatrixFunctional basis_dual(SystemPtr s, Index basis_index) {
  std::vector<Matrix> values(static_cast<size_t>(s->dim()),
                             Matrix::Zero(1, 1));
  values[static_cast<size_t>(basis_index)](0, 0) = 1.0;
  return functional_from_values(std::move(s), 1, std::move(values));
}

MatrixFunctional random_selfadjoint_functional(SystemPtr s, Index m,
                                               std::uint64_t seed,
                                               std::string_view tag,
                                               int index) {
  Rng rng = Rng::stream(seed, std::string(tag) + "#" + std::to_string(index) +
                                  "@m" + std::to_string(m));
  std::vector<Matrix> values;
  values.reserve(static_cast<size_t>(s->dim()));
  for (Index t = 0; t < s->dim(); ++t)
    values.push_back(random_hermitian(rng, m));
  return functional_from_values(std::move(s), m, std::move(values));
}

double functional_distance(const MatrixFunctional& a,
                           const MatrixFunctional& b) {
  double d = 0.0;
  for (std::size_t s = 0; s < a.values.size(); ++s)
    d += (a.values[s] - b.values[s]).squaredNorm();
  return std::sqrt(d);
}

}  // namespace opsys
