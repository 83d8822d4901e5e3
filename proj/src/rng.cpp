// SPDX-License-Identifier: Apache-2.0
#include "opsys/rng.hpp"

namespace opsys {

namespace {
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace

Rng::Rng(std::uint64_t seed) : state_(splitmix64(seed)) {
  if (state_ == 0) state_ = 0x6a09e667f3bcc909ULL;
}

std::uint64_t Rng::next() {
  state_ ^= state_ >> 12;
  state_ ^= state_ << 25;
  state_ ^= state_ >> 27;
  return state_ * 0x2545f4914f6cdd1dULL;
}

double Rng::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::symmetric() { return 2.0 * uniform() - 1.0; }

Cplx Rng::complex_symmetric() {
  double re = symmetric();
  double im = symmetric();
  return {re, im};
}

int Rng::uniform_int(int n) {
  return static_cast<int>(uniform() * n) % n;
}

std::uint64_t Rng::fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Rng Rng::stream(std::uint64_t seed, std::string_view tag) {
  return Rng(seed ^ fnv1a(tag));
}

Matrix random_complex_matrix(Rng& rng, Index rows, Index cols) {
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = rng.complex_symmetric();
  return m;
}

Matrix random_hermitian(Rng& rng, Index n) {
  Matrix m = random_complex_matrix(rng, n, n);
  return 0.5 * (m + m.adjoint()).eval();
}

Vector random_unit_vector(Rng& rng, Index n) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = rng.complex_symmetric();
  double norm = v.norm();
  if (norm < 1e-12) {
    v.setZero();
    v(0) = 1.0;
    return v;
  }
  return v / norm;
}

}  // namespace opsys
