// SPDX-License-Identifier: Apache-2.0
#include "opsys/eig.hpp"

#include <Eigen/Jacobi>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace opsys {

std::string fmt9(double v) {
  std::ostringstream os;
  os.precision(9);
  os << v;
  return os.str();
}

double frobenius(const Matrix& a) { return a.norm(); }

double hermitian_defect(const Matrix& h) {
  if (h.rows() != h.cols()) return std::numeric_limits<double>::infinity();
  return (h - h.adjoint()).norm() / (1.0 + h.norm());
}

bool is_hermitian(const Matrix& h, double rel_tol) {
  return h.rows() == h.cols() && hermitian_defect(h) <= rel_tol;
}

void require_hermitian(const Matrix& h, const char* caller) {
  if (h.rows() != h.cols()) {
    std::ostringstream os;
    os << caller << ": matrix is " << h.rows() << "x" << h.cols()
       << ", expected square";
    throw std::invalid_argument(os.str());
  }
  double defect = (h - h.adjoint()).norm();
  if (defect > 1e-12 * (1.0 + h.norm())) {
    std::ostringstream os;
    os << caller << ": input is not Hermitian, asymmetry norm " << defect;
    throw std::invalid_argument(os.str());
  }
  if (!h.allFinite()) {
    std::ostringstream os;
    os << caller << ": input has non-finite entries";
    throw std::invalid_argument(os.str());
  }
}

EigResult eig_hermitian(const Matrix& h) {
  require_hermitian(h, "eig_hermitian");
  const Index n = h.rows();
  Matrix a = 0.5 * (h + h.adjoint());
  Matrix v = Matrix::Identity(n, n);

  const double scale = std::max(a.norm(), 1e-300);
  const double stop = 1e-15 * scale;
  const int max_sweeps = 64;

  for (int sweep = 0; sweep < max_sweeps && n > 1; ++sweep) {
    double off = 0.0;
    for (Index p = 0; p < n; ++p)
      for (Index q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    off = std::sqrt(2.0 * off);
    if (off <= stop) break;

    for (Index p = 0; p < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) <= 1e-18 * scale) continue;
        Eigen::JacobiRotation<Cplx> rot;
        rot.makeJacobi(a, p, q);
        a.applyOnTheLeft(p, q, rot.adjoint());
        a.applyOnTheRight(p, q, rot);
        v.applyOnTheRight(p, q, rot);
      }
    }
  }

  std::vector<Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Index i, Index j) {
    return a(i, i).real() < a(j, j).real();
  });

  EigResult result;
  result.values.resize(n);
  result.vectors.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    result.values(k) = a(order[static_cast<size_t>(k)],
                         order[static_cast<size_t>(k)]).real();
    result.vectors.col(k) = v.col(order[static_cast<size_t>(k)]);
  }
  return result;
}

Matrix project_psd(const Matrix& h) {
  return clip_spectrum(h, 0.0, std::numeric_limits<double>::infinity());
}

Matrix clip_spectrum(const Matrix& h, double lo, double hi) {
  EigResult eig = eig_hermitian(h);
  const Index n = h.rows();
  Matrix out = Matrix::Zero(n, n);
  for (Index k = 0; k < n; ++k) {
    double lambda = std::min(std::max(eig.values(k), lo), hi);
    if (lambda != 0.0)
      out.noalias() += lambda * eig.vectors.col(k) * eig.vectors.col(k).adjoint();
  }
  return 0.5 * (out + out.adjoint()).eval();
}

namespace {
// Hermitian dilation [[0, a], [a^*, 0]]; its positive spectrum carries the
// singular values of a.
Matrix dilation(const Matrix& a) {
  const Index r = a.rows(), c = a.cols();
  Matrix d = Matrix::Zero(r + c, r + c);
  d.block(0, r, r, c) = a;
  d.block(r, 0, c, r) = a.adjoint();
  return d;
}
}  // namespace

double operator_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  if (!a.allFinite())
    throw std::invalid_argument("operator_norm: non-finite entries");
  Matrix gram = a.adjoint() * a;
  EigResult eig = eig_hermitian(gram);
  double top = eig.values(eig.values.size() - 1);
  return std::sqrt(std::max(top, 0.0));
}

double trace_norm(const Matrix& a) {
  EigResult eig = eig_hermitian(dilation(a));
  double sum = 0.0;
  for (Index k = 0; k < eig.values.size(); ++k)
    sum += std::max(eig.values(k), 0.0);
  return sum;
}

Matrix clip_operator_ball(const Matrix& a, double radius) {
  if (operator_norm(a) <= radius) return a;
  const Index r = a.rows();
  EigResult eig = eig_hermitian(dilation(a));
  Matrix out = Matrix::Zero(a.rows(), a.cols());
  const Index total = eig.values.size();
  for (Index k = 0; k < total; ++k) {
    double sigma = eig.values(k);
    if (sigma <= 1e-14) continue;
    Vector u = eig.vectors.col(k).head(r);
    Vector v = eig.vectors.col(k).tail(a.cols());
    out.noalias() += 2.0 * std::min(sigma, radius) * u * v.adjoint();
  }
  return out;
}

SingularTriple top_singular_triple(const Matrix& a) {
  const Index r = a.rows();
  EigResult eig = eig_hermitian(dilation(a));
  const Index top = eig.values.size() - 1;
  SingularTriple t;
  t.sigma = std::max(eig.values(top), 0.0);
  Vector u = eig.vectors.col(top).head(r);
  Vector v = eig.vectors.col(top).tail(a.cols());
  double nu = u.norm(), nv = v.norm();
  t.left = nu > 1e-14 ? Vector(u / nu) : Vector(Vector::Unit(r, 0));
  t.right = nv > 1e-14 ? Vector(v / nv) : Vector(Vector::Unit(a.cols(), 0));
  return t;
}

RealVector herm_coords(const Matrix& h) {
  const Index n = h.rows();
  RealVector v(n * n);
  Index k = 0;
  for (Index i = 0; i < n; ++i) v(k++) = h(i, i).real();
  const double s = std::sqrt(2.0);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      v(k++) = s * h(i, j).real();
      v(k++) = s * h(i, j).imag();
    }
  return v;
}

Matrix herm_from_coords(const RealVector& v, Index n) {
  Matrix h(n, n);
  Index k = 0;
  for (Index i = 0; i < n; ++i) h(i, i) = v(k++);
  const double s = 1.0 / std::sqrt(2.0);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      double re = v(k++) * s;
      double im = v(k++) * s;
      h(i, j) = Cplx(re, im);
      h(j, i) = Cplx(re, -im);
    }
  return h;
}

}  // namespace opsys
