// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string_view>

#include "opsys/types.hpp"

namespace opsys {

// Deterministic xorshift64* stream. The state is seeded through splitmix64 so
// that small seeds (0, 1, ...) give well-mixed streams, and named substreams
// are derived by folding an FNV-1a hash of a tag into the seed. Uniform
// doubles take the top 53 bits; symmetric() maps them onto [-1, 1].
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();
  double uniform();            // [0, 1)
  double symmetric();          // [-1, 1]
  Cplx complex_symmetric();    // both parts symmetric()
  int uniform_int(int n);      // {0, ..., n-1}

  // Substream for a named purpose; deterministic in (seed, tag).
  static Rng stream(std::uint64_t seed, std::string_view tag);

  static std::uint64_t fnv1a(std::string_view s);

 private:
  std::uint64_t state_;
};

// Random matrices used by samplers; all entries from rng.symmetric().
Matrix random_complex_matrix(Rng& rng, Index rows, Index cols);
Matrix random_hermitian(Rng& rng, Index n);
Vector random_unit_vector(Rng& rng, Index n);

}  // namespace opsys
