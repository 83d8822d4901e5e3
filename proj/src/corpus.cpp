// SPDX-License-Identifier: Apache-2.0
#include "opsys/corpus.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "opsys/rng.hpp"

namespace opsys {

namespace {
Matrix unit_matrix(Index d, Index i, Index j) {
  Matrix m = Matrix::Zero(d, d);
  m(i, j) = 1.0;
  return m;
}
}  // namespace

SystemPtr build_linfty(Index n) {
  if (n < 1) throw std::invalid_argument("build_linfty: n >= 1 required");
  std::vector<Matrix> basis;
  for (Index p = 0; p < n; ++p) basis.push_back(unit_matrix(n, p, p));
  return make_system(basis, true, "linfty:" + std::to_string(n));
}

SystemPtr build_toeplitz(Index n) {
  if (n < 1) throw std::invalid_argument("build_toeplitz: n >= 1 required");
  std::vector<Matrix> basis;
  auto shift_power = [n](Index k) {  // sum_i E_{i+k, i}
    Matrix m = Matrix::Zero(n, n);
    for (Index i = 0; i + k < n; ++i) m(i + k, i) = 1.0;
    return m;
  };
  basis.push_back(Matrix::Identity(n, n) / std::sqrt(double(n)));
  for (Index k = 1; k < n; ++k) {
    Matrix lo = shift_power(k);
    double norm = std::sqrt(2.0 * double(n - k));
    basis.push_back((lo + lo.adjoint()) / norm);
    basis.push_back((Cplx(0, 1) * lo - Cplx(0, 1) * lo.adjoint()) / norm);
  }
  return make_system(basis, true, "toeplitz:" + std::to_string(n));
}

SystemPtr build_graph_system(const Eigen::MatrixXi& adjacency) {
  const Index d = adjacency.rows();
  if (d < 1 || adjacency.cols() != d)
    throw std::invalid_argument("build_graph_system: adjacency must be square");
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      if (adjacency(i, j) != adjacency(j, i))
        throw std::invalid_argument(
            "build_graph_system: adjacency must be symmetric");
  std::vector<Matrix> basis;
  for (Index i = 0; i < d; ++i) basis.push_back(unit_matrix(d, i, i));
  const double s = 1.0 / std::sqrt(2.0);
  for (Index i = 0; i < d; ++i)
    for (Index j = i + 1; j < d; ++j)
      if (adjacency(i, j) != 0) {
        Matrix e = unit_matrix(d, i, j);
        basis.push_back(s * (e + e.adjoint()));
        basis.push_back(s * (Cplx(0, 1) * e - Cplx(0, 1) * e.adjoint()));
      }
  std::ostringstream label;
  label << "graph:" << d;
  return make_system(basis, true, label.str());
}

std::vector<CorpusEntry> build_counterexamples() {
  std::vector<CorpusEntry> entries;

  {  // Off-diagonal 2x2 subspace: only 0 is positive at every level.
    std::vector<Matrix> gens = {unit_matrix(2, 0, 1), unit_matrix(2, 1, 0)};
    CorpusEntry e;
    e.system = make_system(gens, false, "offdiag-m2");
    e.provenance = "paper-example";
    e.expected.unital = false;
    e.expected.dualizable = false;
    e.expected.dual_cone_proper = false;
    entries.push_back(std::move(e));
  }
  {  // Coinciding off-diagonal entries: one dimension, cone {0}.
    Matrix x = unit_matrix(2, 0, 1) + unit_matrix(2, 1, 0);
    CorpusEntry e;
    e.system = make_system({x / std::sqrt(2.0)}, false, "symoffdiag-m2");
    e.provenance = "paper-example";
    e.expected.unital = false;
    e.expected.dual_cone_proper = false;
    entries.push_back(std::move(e));
  }
  for (Index d = 2; d <= 3; ++d) {
    std::vector<Matrix> gens;
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j) gens.push_back(unit_matrix(d, i, j));
    CorpusEntry e;
    e.system = make_system(gens, true, "matrix:" + std::to_string(d));
    e.provenance = "paper-example";
    e.expected.unital = true;
    e.expected.dualizable = true;
    e.expected.dual_cone_proper = true;
    entries.push_back(std::move(e));
  }
  return entries;
}

SystemPtr random_system(std::uint64_t seed, Index d, Index k, bool unital) {
  if (k < 1 || k + (unital ? 1 : 0) > d * d)
    throw std::invalid_argument(
        "random_system: need 1 <= k and k (+1 if unital) <= d^2");
  Rng rng = Rng::stream(seed, "random_system");
  std::vector<Matrix> gens;
  if (unital) gens.push_back(Matrix::Identity(d, d));
  for (Index t = 0; t < k; ++t) gens.push_back(random_hermitian(rng, d));
  std::ostringstream label;
  label << "random:" << seed << ":" << d << ":" << k
        << (unital ? ":unital" : "");
  return make_system(gens, unital, label.str());
}

namespace {
Eigen::MatrixXi path_adjacency(Index n) {
  Eigen::MatrixXi a = Eigen::MatrixXi::Zero(n, n);
  for (Index i = 0; i + 1 < n; ++i) a(i, i + 1) = a(i + 1, i) = 1;
  return a;
}
Eigen::MatrixXi complete_adjacency(Index n) {
  Eigen::MatrixXi a = Eigen::MatrixXi::Ones(n, n);
  for (Index i = 0; i < n; ++i) a(i, i) = 0;
  return a;
}
Eigen::MatrixXi empty_adjacency(Index n) { return Eigen::MatrixXi::Zero(n, n); }
}  // namespace

std::vector<CorpusEntry> standard_corpus() {
  std::vector<CorpusEntry> entries;
  auto builder = [&](SystemPtr s, bool dualizable, bool proper) {
    CorpusEntry e;
    e.system = std::move(s);
    e.provenance = "builder";
    e.expected.unital = e.system->unital();
    e.expected.dualizable = dualizable;
    e.expected.dual_cone_proper = proper;
    entries.push_back(std::move(e));
  };
  for (Index n : {1, 2, 3, 5}) builder(build_linfty(n), true, true);
  for (Index n : {2, 3}) builder(build_toeplitz(n), true, true);
  builder(build_graph_system(path_adjacency(3)), true, true);
  builder(build_graph_system(empty_adjacency(2)), true, true);
  for (CorpusEntry& e : build_counterexamples()) entries.push_back(std::move(e));
  return entries;
}

SystemPtr build_named_system(const std::string& spec) {
  auto split = [](const std::string& s) {
    std::vector<std::string> parts;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, ':')) parts.push_back(item);
    return parts;
  };
  std::vector<std::string> p = split(spec);
  if (p.empty()) return nullptr;
  try {
    if (p[0] == "linfty" && p.size() == 2) return build_linfty(std::stol(p[1]));
    if (p[0] == "toeplitz" && p.size() == 2)
      return build_toeplitz(std::stol(p[1]));
    if (p[0] == "matrix" && p.size() == 2) {
      Index d = std::stol(p[1]);
      std::vector<Matrix> gens;
      for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j) gens.push_back(unit_matrix(d, i, j));
      return make_system(gens, true, "matrix:" + p[1]);
    }
    if (p[0] == "offdiag-m2" || p[0] == "symoffdiag-m2") {
      for (CorpusEntry& e : build_counterexamples())
        if (e.system->label() == p[0]) return e.system;
    }
    if (p[0] == "graph" && p.size() == 3) {
      Index n = std::stol(p[2]);
      if (p[1] == "path") return build_graph_system(path_adjacency(n));
      if (p[1] == "complete") return build_graph_system(complete_adjacency(n));
      if (p[1] == "empty") return build_graph_system(empty_adjacency(n));
      return nullptr;
    }
    if (p[0] == "random" && (p.size() == 4 || p.size() == 5)) {
      bool unital = p.size() == 5 && p[4] == "unital";
      return random_system(std::stoull(p[1]), std::stol(p[2]), std::stol(p[3]),
                           unital);
    }
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    return nullptr;
  }
  return nullptr;
}

}  // namespace opsys
