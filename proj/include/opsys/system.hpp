// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "opsys/types.hpp"

namespace opsys {

// A concrete operator system: the complex span of Hermitian, Frobenius-
// orthonormal d x d matrices. make_system validates generators and brings
// them into this normal form; values are immutable afterwards, so systems
// can be shared freely between concurrent solves.
class OperatorSystem {
 public:
  Index ambient_dim() const { return d_; }
  Index dim() const { return static_cast<Index>(basis_.size()); }
  const std::vector<Matrix>& basis() const { return basis_; }
  bool unital() const { return unital_; }
  const std::string& label() const { return label_; }

  // Identity membership detected from the span (independent of the flag).
  bool contains_identity() const { return contains_identity_; }
  // Coefficients of I_d in the basis; only valid when contains_identity().
  const Vector& identity_coeffs() const { return identity_coeffs_; }

  // Span closed under matrix products (then positive parts of self-adjoint
  // elements stay inside the span at every level).
  bool is_algebra() const;
  bool is_commutative() const;

  Vector expand(const Matrix& x) const;  // Frobenius coefficients, d x d input
  double span_distance(const Matrix& x) const;

  // Orthonormal bases for level-n amplifications, cached per level.
  struct LevelBasis {
    std::vector<Matrix> complex_onb;  // C-ONB of M_n(S), size n^2 k
    std::vector<Matrix> herm_onb;     // R-ONB of M_n(S)^sa, size n^2 k
  };
  std::shared_ptr<const LevelBasis> level_basis(Index n) const;

  struct Tag {};  // make_system is the only constructor path
  OperatorSystem(Tag, Index d, std::vector<Matrix> basis, bool unital,
                 std::string label);

 private:
  Index d_;
  std::vector<Matrix> basis_;
  bool unital_;
  std::string label_;
  bool contains_identity_ = false;
  Vector identity_coeffs_;

  mutable std::mutex cache_mutex_;
  mutable std::map<Index, std::shared_ptr<const LevelBasis>> level_cache_;
  mutable std::optional<bool> algebra_;
  mutable std::optional<bool> commutative_;
};

using SystemPtr = std::shared_ptr<const OperatorSystem>;

// Validates and normalizes a generating family:
//  - all matrices square, same dimension, finite entries;
//  - generators linearly independent (dependent families are rejected with
//    the offending combination);
//  - the span is adjoint-closed (rejected otherwise, never silently closed);
//  - when unital is set, I_d must lie in the span.
// The stored basis is Hermitian and Frobenius-orthonormal; generator families
// that already have this form are kept verbatim.
SystemPtr make_system(const std::vector<Matrix>& generators, bool unital,
                      std::string label);

// Level-n element of M_n(S), kept both concretely and by coefficients.
struct MatrixElement {
  SystemPtr system;
  Index level = 1;
  Matrix concrete;              // (n d) x (n d)
  std::vector<Matrix> coeffs;   // one n x n coefficient matrix per basis item

  bool self_adjoint(double tol = 1e-10) const;
};

Matrix assemble_concrete(const OperatorSystem& s, Index level,
                         const std::vector<Matrix>& coeffs);
std::vector<Matrix> extract_coeffs(const OperatorSystem& s, Index level,
                                   const Matrix& concrete);

MatrixElement element_from_coeffs(SystemPtr s, Index level,
                                  std::vector<Matrix> coeffs);
// Validates that concrete lies in M_n(S) (within 1e-10 relative).
MatrixElement element_from_concrete(SystemPtr s, Index level,
                                    const Matrix& concrete);

MatrixElement operator+(const MatrixElement& a, const MatrixElement& b);
MatrixElement operator-(const MatrixElement& a, const MatrixElement& b);
MatrixElement operator*(Cplx scale, const MatrixElement& x);

// Distance of two systems' data (used to match elements to systems).
bool same_system(const OperatorSystem& a, const OperatorSystem& b);

struct ConeReport {
  bool member = false;
  double min_eigenvalue = 0.0;
  double hermitian_defect = 0.0;
};

// Membership in the induced cone PSD \cap M_n(S); the subspace part holds by
// construction, so the report carries the spectral data.
ConeReport cone_membership(const MatrixElement& x, double tol);

double element_norm(const MatrixElement& x);

// (a (x) I_d)^* x (a (x) I_d) for a scalar n x m matrix a, where n = x.level;
// the result lives at level m. Preserves cone membership.
MatrixElement congruence(const Matrix& a, const MatrixElement& x);

// Identity element 1_n (x) I_d of a system containing the identity.
MatrixElement unit_element(SystemPtr s, Index level);

// Seeded random self-adjoint element of M_n(S) with unit operator norm.
MatrixElement random_selfadjoint_element(SystemPtr s, Index level,
                                         std::uint64_t seed,
                                         std::string_view tag, int index);

}  // namespace opsys
