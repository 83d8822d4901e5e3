// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "opsys/system.hpp"

namespace opsys {

struct ExpectedProperties {
  std::optional<bool> unital;
  std::optional<bool> dualizable;
  std::optional<bool> dual_cone_proper;
};

struct CorpusEntry {
  SystemPtr system;
  std::string provenance;  // "paper-example" | "builder" | "random(seed)" | "user-file"
  ExpectedProperties expected;
};

// Diagonal matrices in M_N; unital commutative C*-algebra.
SystemPtr build_linfty(Index n);

// Span of shift powers {S^j : |j| <= n-1} in M_n (the Toeplitz matrices),
// stored as a Hermitian orthonormal basis; unital, dimension 2n-1.
SystemPtr build_toeplitz(Index n);

// span{E_ii} plus {E_ij : (i,j) an edge} for an undirected graph given by a
// symmetric 0/1 adjacency matrix; unital, dimension d + 2|E|.
SystemPtr build_graph_system(const Eigen::MatrixXi& adjacency);

// The off-diagonal M_2 subspace (cone {0}), its symmetric one-dimensional
// subspace, and the full matrix algebras M_d for d <= 3.
std::vector<CorpusEntry> build_counterexamples();

// Span of k seeded random Hermitian matrices (plus the identity when unital
// is set); deterministic in the seed.
SystemPtr random_system(std::uint64_t seed, Index d, Index k, bool unital);

// Every named system the suites run over, with provenance and the expected
// properties of the paper-backed entries.
std::vector<CorpusEntry> standard_corpus();

// Resolves a CLI specifier such as "linfty:3", "toeplitz:3", "matrix:2",
// "offdiag-m2", "symoffdiag-m2", "graph:path:3", "graph:complete:2",
// "random:<seed>:<d>:<k>[:unital]". Returns nullptr for unknown names.
SystemPtr build_named_system(const std::string& spec);

}  // namespace opsys
