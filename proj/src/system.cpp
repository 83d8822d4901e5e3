// SPDX-License-Identifier: Apache-2.0
#include "opsys/system.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "opsys/eig.hpp"
#include "opsys/rng.hpp"

namespace opsys {

namespace {

constexpr double kSpanTol = 1e-10;

Vector expand_in(const std::vector<Matrix>& basis, const Matrix& x) {
  Vector c(static_cast<Index>(basis.size()));
  for (std::size_t s = 0; s < basis.size(); ++s)
    c(static_cast<Index>(s)) = (basis[s].adjoint() * x).trace();
  return c;
}

Matrix assemble_in(const std::vector<Matrix>& basis, const Vector& c, Index d) {
  Matrix x = Matrix::Zero(d, d);
  for (std::size_t s = 0; s < basis.size(); ++s)
    x.noalias() += c(static_cast<Index>(s)) * basis[s];
  return x;
}

bool hermitian_orthonormal(const std::vector<Matrix>& mats) {
  for (std::size_t s = 0; s < mats.size(); ++s) {
    if ((mats[s] - mats[s].adjoint()).norm() > 1e-12 * (1.0 + mats[s].norm()))
      return false;
    for (std::size_t t = s; t < mats.size(); ++t) {
      Cplx g = (mats[s].adjoint() * mats[t]).trace();
      double want = s == t ? 1.0 : 0.0;
      if (std::abs(g - want) > 1e-12) return false;
    }
  }
  return true;
}

}  // namespace

OperatorSystem::OperatorSystem(Tag, Index d, std::vector<Matrix> basis,
                               bool unital, std::string label)
    : d_(d), basis_(std::move(basis)), unital_(unital),
      label_(std::move(label)) {
  Matrix id = Matrix::Identity(d_, d_);
  Vector c = expand_in(basis_, id);
  contains_identity_ = (assemble_in(basis_, c, d_) - id).norm() <= kSpanTol * d_;
  if (contains_identity_) identity_coeffs_ = c;
}

Vector OperatorSystem::expand(const Matrix& x) const {
  return expand_in(basis_, x);
}

double OperatorSystem::span_distance(const Matrix& x) const {
  Vector c = expand_in(basis_, x);
  return (assemble_in(basis_, c, d_) - x).norm();
}

bool OperatorSystem::is_algebra() const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  if (!algebra_) {
    bool ok = true;
    for (std::size_t s = 0; s < basis_.size() && ok; ++s)
      for (std::size_t t = 0; t < basis_.size() && ok; ++t)
        ok = span_distance(basis_[s] * basis_[t]) <= kSpanTol;
    algebra_ = ok;
  }
  return *algebra_;
}

bool OperatorSystem::is_commutative() const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  if (!commutative_) {
    bool ok = true;
    for (std::size_t s = 0; s < basis_.size() && ok; ++s)
      for (std::size_t t = s + 1; t < basis_.size() && ok; ++t)
        ok = (basis_[s] * basis_[t] - basis_[t] * basis_[s]).norm() <= 1e-10;
    commutative_ = ok;
  }
  return *commutative_;
}

std::shared_ptr<const OperatorSystem::LevelBasis> OperatorSystem::level_basis(
    Index n) const {
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = level_cache_.find(n);
    if (it != level_cache_.end()) return it->second;
  }

  auto lb = std::make_shared<LevelBasis>();
  const Index k = dim();
  const Index nd = n * d_;
  const double s2 = 1.0 / std::sqrt(2.0);

  auto place = [&](Index i, Index j, const Matrix& b) {
    Matrix m = Matrix::Zero(nd, nd);
    m.block(i * d_, j * d_, d_, d_) = b;
    return m;
  };

  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index s = 0; s < k; ++s)
        lb->complex_onb.push_back(place(i, j, basis_[static_cast<size_t>(s)]));

  for (Index i = 0; i < n; ++i)
    for (Index s = 0; s < k; ++s)
      lb->herm_onb.push_back(place(i, i, basis_[static_cast<size_t>(s)]));
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      for (Index s = 0; s < k; ++s) {
        const Matrix& b = basis_[static_cast<size_t>(s)];
        lb->herm_onb.push_back(s2 * (place(i, j, b) + place(j, i, b)));
        lb->herm_onb.push_back(s2 * (place(i, j, Cplx(0, 1) * b) +
                                     place(j, i, Cplx(0, -1) * b)));
      }

  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto [it, inserted] = level_cache_.emplace(n, std::move(lb));
  return it->second;
}

SystemPtr make_system(const std::vector<Matrix>& generators, bool unital,
                      std::string label) {
  if (generators.empty())
    throw std::invalid_argument("make_system: no generators");
  const Index d = generators.front().rows();
  for (const Matrix& g : generators) {
    if (g.rows() != g.cols() || g.rows() != d)
      throw std::invalid_argument(
          "make_system: generators must be square matrices of equal size");
    if (!g.allFinite())
      throw std::invalid_argument("make_system: non-finite generator entries");
  }

  // Independence via the Gram matrix of the generators.
  const Index k = static_cast<Index>(generators.size());
  Matrix gram(k, k);
  for (Index s = 0; s < k; ++s)
    for (Index t = 0; t < k; ++t)
      gram(s, t) = (generators[static_cast<size_t>(s)].adjoint() *
                    generators[static_cast<size_t>(t)])
                       .trace();
  EigResult ge = eig_hermitian(gram);
  double top = std::max(ge.values(k - 1), 1e-30);
  if (ge.values(0) <= 1e-20 * top) {
    std::ostringstream os;
    os << "make_system: dependent generators; combination with coefficients (";
    for (Index s = 0; s < k; ++s) {
      if (s) os << ", ";
      os << ge.vectors(s, 0).real();
      double im = ge.vectors(s, 0).imag();
      if (std::abs(im) > 1e-14) os << (im < 0 ? "-" : "+") << std::abs(im) << "i";
    }
    os << ") is numerically zero";
    throw std::invalid_argument(os.str());
  }

  // Orthonormalize complex span via modified Gram-Schmidt (for the
  // adjoint-closure test and coefficient work below).
  std::vector<Matrix> cbasis;
  for (const Matrix& g : generators) {
    Matrix v = g;
    for (const Matrix& b : cbasis) v -= (b.adjoint() * v).trace() * b;
    double norm = v.norm();
    if (norm <= 1e-12) continue;  // unreachable after the Gram check
    cbasis.push_back(v / norm);
  }
  if (static_cast<Index>(cbasis.size()) != k)
    throw std::invalid_argument("make_system: dependent generators");

  for (const Matrix& g : generators) {
    Matrix adj = g.adjoint();
    Matrix proj = assemble_in(cbasis, expand_in(cbasis, adj), d);
    if ((proj - adj).norm() > kSpanTol * (1.0 + adj.norm())) {
      std::ostringstream os;
      os << "make_system: span is not adjoint-closed (distance of a "
            "generator adjoint to the span is "
         << (proj - adj).norm() << ")";
      throw std::invalid_argument(os.str());
    }
  }

  Matrix id = Matrix::Identity(d, d);
  double id_dist =
      (assemble_in(cbasis, expand_in(cbasis, id), d) - id).norm();
  if (unital && id_dist > kSpanTol * d) {
    std::ostringstream os;
    os << "make_system: unital flag set but the identity is not in the span "
          "(distance "
       << id_dist << ")";
    throw std::invalid_argument(os.str());
  }

  std::vector<Matrix> basis;
  if (hermitian_orthonormal(generators)) {
    basis = generators;
  } else {
    // Hermitian normal form: a real-orthonormal basis of the self-adjoint
    // part is also a complex-orthonormal basis of the span.
    std::vector<Matrix> herm;
    for (const Matrix& g : generators) {
      herm.push_back(0.5 * (g + g.adjoint()));
      herm.push_back(Cplx(0, 0.5) * (g - g.adjoint()));
    }
    for (const Matrix& h : herm) {
      Matrix v = h;
      for (const Matrix& b : basis) v -= (b.adjoint() * v).trace().real() * b;
      double norm = v.norm();
      if (norm <= 1e-9) continue;
      basis.push_back(v / norm);
    }
    if (static_cast<Index>(basis.size()) != k)
      throw std::invalid_argument(
          "make_system: self-adjoint part has unexpected dimension; "
          "generators do not span an adjoint-closed space");
  }

  return std::make_shared<OperatorSystem>(OperatorSystem::Tag{}, d,
                                          std::move(basis), unital,
                                          std::move(label));
}

bool MatrixElement::self_adjoint(double tol) const {
  return (concrete - concrete.adjoint()).norm() <= tol * (1.0 + concrete.norm());
}

Matrix assemble_concrete(const OperatorSystem& s, Index level,
                         const std::vector<Matrix>& coeffs) {
  const Index d = s.ambient_dim();
  Matrix x = Matrix::Zero(level * d, level * d);
  for (std::size_t t = 0; t < coeffs.size(); ++t)
    for (Index i = 0; i < level; ++i)
      for (Index j = 0; j < level; ++j)
        x.block(i * d, j * d, d, d) += coeffs[t](i, j) * s.basis()[t];
  return x;
}

std::vector<Matrix> extract_coeffs(const OperatorSystem& s, Index level,
                                   const Matrix& concrete) {
  const Index d = s.ambient_dim();
  std::vector<Matrix> coeffs(static_cast<size_t>(s.dim()),
                             Matrix::Zero(level, level));
  for (Index i = 0; i < level; ++i)
    for (Index j = 0; j < level; ++j) {
      Vector c = s.expand(concrete.block(i * d, j * d, d, d));
      for (Index t = 0; t < s.dim(); ++t)
        coeffs[static_cast<size_t>(t)](i, j) = c(t);
    }
  return coeffs;
}

MatrixElement element_from_coeffs(SystemPtr s, Index level,
                                  std::vector<Matrix> coeffs) {
  if (!s) throw std::invalid_argument("element_from_coeffs: null system");
  if (static_cast<Index>(coeffs.size()) != s->dim())
    throw std::invalid_argument(
        "element_from_coeffs: coefficient count does not match basis size");
  for (const Matrix& c : coeffs)
    if (c.rows() != level || c.cols() != level)
      throw std::invalid_argument(
          "element_from_coeffs: coefficient matrices must be level x level");
  MatrixElement x;
  x.system = std::move(s);
  x.level = level;
  x.concrete = assemble_concrete(*x.system, level, coeffs);
  x.coeffs = std::move(coeffs);
  return x;
}

MatrixElement element_from_concrete(SystemPtr s, Index level,
                                    const Matrix& concrete) {
  if (!s) throw std::invalid_argument("element_from_concrete: null system");
  const Index nd = level * s->ambient_dim();
  if (concrete.rows() != nd || concrete.cols() != nd)
    throw std::invalid_argument(
        "element_from_concrete: matrix size does not match level");
  MatrixElement x;
  x.system = std::move(s);
  x.level = level;
  x.coeffs = extract_coeffs(*x.system, level, concrete);
  x.concrete = assemble_concrete(*x.system, level, x.coeffs);
  double dist = (x.concrete - concrete).norm();
  if (dist > 1e-10 * (1.0 + concrete.norm())) {
    std::ostringstream os;
    os << "element_from_concrete: matrix is not in M_n(S), span distance "
       << dist;
    throw std::invalid_argument(os.str());
  }
  return x;
}

namespace {
void require_compatible(const MatrixElement& a, const MatrixElement& b,
                        const char* who) {
  if (!same_system(*a.system, *b.system) || a.level != b.level)
    throw std::invalid_argument(std::string(who) +
                                ": elements from different spaces");
}
}  // namespace

MatrixElement operator+(const MatrixElement& a, const MatrixElement& b) {
  require_compatible(a, b, "operator+");
  MatrixElement r = a;
  r.concrete += b.concrete;
  for (std::size_t s = 0; s < r.coeffs.size(); ++s) r.coeffs[s] += b.coeffs[s];
  return r;
}

MatrixElement operator-(const MatrixElement& a, const MatrixElement& b) {
  require_compatible(a, b, "operator-");
  MatrixElement r = a;
  r.concrete -= b.concrete;
  for (std::size_t s = 0; s < r.coeffs.size(); ++s) r.coeffs[s] -= b.coeffs[s];
  return r;
}

MatrixElement operator*(Cplx scale, const MatrixElement& x) {
  MatrixElement r = x;
  r.concrete *= scale;
  for (Matrix& c : r.coeffs) c *= scale;
  return r;
}

bool same_system(const OperatorSystem& a, const OperatorSystem& b) {
  if (&a == &b) return true;
  if (a.ambient_dim() != b.ambient_dim() || a.dim() != b.dim()) return false;
  for (Index s = 0; s < a.dim(); ++s)
    if ((a.basis()[static_cast<size_t>(s)] - b.basis()[static_cast<size_t>(s)])
            .norm() > 1e-10)
      return false;
  return true;
}

ConeReport cone_membership(const MatrixElement& x, double tol) {
  ConeReport report;
  report.hermitian_defect = hermitian_defect(x.concrete);
  if (report.hermitian_defect > tol) {
    report.member = false;
    report.min_eigenvalue = 0.0;
    return report;
  }
  Matrix h = 0.5 * (x.concrete + x.concrete.adjoint());
  EigResult eig = eig_hermitian(h);
  report.min_eigenvalue = eig.values(0);
  report.member = report.min_eigenvalue >= -tol;
  return report;
}

double element_norm(const MatrixElement& x) { return operator_norm(x.concrete); }

MatrixElement congruence(const Matrix& a, const MatrixElement& x) {
  if (a.rows() != x.level)
    throw std::invalid_argument(
        "congruence: scalar matrix rows must equal the element level");
  const Index m = a.cols();
  std::vector<Matrix> coeffs;
  coeffs.reserve(x.coeffs.size());
  for (const Matrix& c : x.coeffs) coeffs.push_back(a.adjoint() * c * a);
  return element_from_coeffs(x.system, m, std::move(coeffs));
}

MatrixElement unit_element(SystemPtr s, Index level) {
  if (!s->contains_identity())
    throw std::invalid_argument("unit_element: identity not in the span");
  std::vector<Matrix> coeffs(static_cast<size_t>(s->dim()),
                             Matrix::Zero(level, level));
  const Vector& id = s->identity_coeffs();
  for (Index t = 0; t < s->dim(); ++t)
    coeffs[static_cast<size_t>(t)] =
        id(t) * Matrix::Identity(level, level);
  return element_from_coeffs(std::move(s), level, std::move(coeffs));
}

MatrixElement random_selfadjoint_element(SystemPtr s, Index level,
                                         std::uint64_t seed,
                                         std::string_view tag, int index) {
  Rng rng = Rng::stream(seed, std::string(tag) + "#" + std::to_string(index) +
                                  "@" + std::to_string(level));
  std::vector<Matrix> coeffs;
  coeffs.reserve(static_cast<size_t>(s->dim()));
  for (Index t = 0; t < s->dim(); ++t)
    coeffs.push_back(random_hermitian(rng, level));
  MatrixElement x = element_from_coeffs(std::move(s), level, std::move(coeffs));
  double norm = element_norm(x);
  if (norm < 1e-12) return x;
  return (1.0 / norm) * x;
}

}  // namespace opsys
