// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>

#include "opsys/feasibility.hpp"
#include "opsys/functional.hpp"
#include "opsys/seesaw.hpp"

namespace opsys {

// Choi matrix convention for a map Theta: M_d -> M_m:
//   C = sum_ij E_ij (x) Theta(E_ij),   C_{(i,k),(j,l)} = Theta(E_ij)_{kl};
// C is PSD exactly when Theta is completely positive, and
//   Theta(x)_{kl} = sum_ij x_ij C_{(i,k),(j,l)} = Tr[ C (x^T (x) E_lk) ].

Matrix kron(const Matrix& a, const Matrix& b);

Matrix apply_choi(const Matrix& choi, Index d, Index m, const Matrix& x);

// Choi matrix of x -> v^* x v for an isometry-like v (d x m).
Matrix compression_choi(const Matrix& v);

// Restriction of the map given by choi to the span of S, as a functional.
MatrixFunctional functional_from_choi(SystemPtr s, Index m,
                                      const Matrix& choi);

// Hermitian pairing rows: appends real-linear constraints over the herm
// coordinates of an AffinePSDProblem's blocks.
class ConstraintBuilder {
 public:
  explicit ConstraintBuilder(const AffinePSDProblem& p);

  // sum_b <H_b, X_b>_F = rhs with Hermitian H_b (real pairing).
  void add_pairing(const std::vector<std::pair<std::size_t, Matrix>>& terms,
                   double rhs);
  // Both real rows of the complex constraint Tr[X_b M] = value.
  void add_complex_trace(std::size_t block, const Matrix& m, Cplx value);
  // Rows tying Z = partial trace over the d-index of the Choi block.
  void add_partial_trace_link(std::size_t choi_block, Index d, Index m,
                              std::size_t z_block);

  void finalize(AffinePSDProblem& p) const;

 private:
  BlockLayout layout_;
  std::vector<RealVector> rows_;
  std::vector<double> rhs_;
};

// Rows pinning the Choi read-out on the system's basis to the functional's
// values (the extension property Theta|_S = theta_f).
void add_extension_rows(ConstraintBuilder& builder, std::size_t choi_block,
                        const MatrixFunctional& f);

struct ChoiCertificate {
  Matrix choi;
  std::string kind;  // "cp-witness" | "extension" | "wittstock-pair"
  double residual = 0.0;
  Index in_dim = 0;
  Index out_dim = 0;
};

struct CpReport {
  enum class Verdict { Cp, NotCp, Undecided };
  Verdict verdict = Verdict::Undecided;
  std::string method;
  std::optional<ChoiCertificate> certificate;   // when Cp via extension
  std::optional<MatrixElement> falsification;   // cone element with bad image
  double witness_min_eig = 0.0;                 // lambda_min at the witness
  double gap = 0.0;                             // stall gap when inconclusive
  int iterations = 0;
};

// Complete positivity of theta_f. Extension feasibility decides the unital
// case; otherwise a feasible extension remains sufficient for CP and a
// see-saw searching for a cone contraction with non-PSD image remains
// sufficient for the refutation, with the undecided band reported.
CpReport is_cp(const MatrixFunctional& f, double tol,
               const SeesawOptions& opt = {});

// Random CP functional: restriction of a seeded random CP map M_d -> M_m,
// certified by construction (the Choi matrix is the extension certificate).
std::pair<MatrixFunctional, ChoiCertificate> random_cp_functional(
    SystemPtr s, Index m, std::uint64_t seed, std::string_view tag, int index);

}  // namespace opsys
