#pragma once

// Seeded generators. The engine is std::mt19937_64, whose output sequence is
// fixed by the C++ standard; uniform and normal variates are derived here
// (53-bit mantissa uniforms, Box-Muller normals) rather than through
// <random> distributions, whose algorithms are implementation-defined. The
// same seed therefore produces bit-identical matrices on every conforming
// platform.

#include <cstdint>
#include <random>

#include "jdlab/matrix.hpp"

namespace jdlab {

struct RngSeed {
  std::uint64_t value = 0;
};

class Rng {
 public:
  explicit Rng(RngSeed seed) : engine_(seed.value) {}

  /// Uniform on [0, 1).
  double uniform();
  /// Standard normal.
  double normal();
  /// Complex normal with E|z|^2 = 1.
  cplx complex_normal();
  /// Fresh seed for a derived stream.
  RngSeed split() { return RngSeed{engine_()}; }

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

/// Matrix of independent (complex or real) standard normal entries.
Mat random_gaussian(std::size_t rows, std::size_t cols, Rng& rng, bool real_only);

/// Haar-like random unitary (orthogonal when real_only): modified Gram-Schmidt,
/// applied twice per column, on a seeded Gaussian matrix.
Mat random_unitary(std::size_t n, RngSeed seed, bool real_only);
Mat random_unitary(std::size_t n, Rng& rng, bool real_only);

/// Random antihermitian matrix (real antisymmetric when real_only).
Mat random_antihermitian(std::size_t n, Rng& rng, bool real_only);

}  // namespace jdlab
