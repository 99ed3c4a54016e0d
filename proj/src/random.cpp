#include "jdlab/random.hpp"

#include <cmath>
#include <numbers>

#include "jdlab/errors.hpp"

namespace jdlab {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_normal_;
  }
  double u1 = uniform();
  while (u1 == 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  cached_normal_ = r * std::sin(theta);
  has_cached_ = true;
  return r * std::cos(theta);
}

cplx Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

Mat random_gaussian(std::size_t rows, std::size_t cols, Rng& rng, bool real_only) {
  Mat m(rows, cols);
  for (auto& z : m.entries()) z = real_only ? cplx(rng.normal(), 0.0) : rng.complex_normal();
  return m;
}

Mat random_unitary(std::size_t n, Rng& rng, bool real_only) {
  if (n == 0) throw DimensionError("random_unitary: n must be positive");
  Mat q = random_gaussian(n, n, rng, real_only);
  for (std::size_t j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t p = 0; p < j; ++p) {
        cplx dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += std::conj(q(i, p)) * q(i, j);
        for (std::size_t i = 0; i < n; ++i) q(i, j) -= dot * q(i, p);
      }
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm += std::norm(q(i, j));
    norm = std::sqrt(norm);
    // A Gaussian column lying in the span of its predecessors has probability zero.
    if (norm == 0.0) throw Error("random_unitary: rank-deficient Gaussian draw");
    for (std::size_t i = 0; i < n; ++i) q(i, j) /= norm;
  }
  return q;
}

Mat random_unitary(std::size_t n, RngSeed seed, bool real_only) {
  Rng rng(seed);
  return random_unitary(n, rng, real_only);
}

Mat random_antihermitian(std::size_t n, Rng& rng, bool real_only) {
  const Mat g = random_gaussian(n, n, rng, real_only);
  Mat a = g - adjoint(g);
  a *= 0.5;
  return a;
}

}  // namespace jdlab
