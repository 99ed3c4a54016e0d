#include <algorithm>
#include <cmath>
#include <string>

#include "jdlab/ensemble.hpp"
#include "jdlab/errors.hpp"

namespace jdlab {

namespace {

// Left multiplication by I + c E_ij: row i += c * row j.
void add_row_multiple(Mat& w, std::size_t i, std::size_t j, cplx c) {
  for (std::size_t col = 0; col < w.cols(); ++col) w(i, col) += c * w(j, col);
}

}  // namespace

// Reduce B to the identity with row operations T_r ... T_1 B = I, each T_s a
// transvection. For column c the pivot is first forced to exactly 1 by adding
// a multiple of the largest lower entry's row (ties to the smallest index);
// when every lower entry vanishes, row c is copied into row c+1 first. The
// remaining entries of the column are then cleared. The last pivot equals
// det(B) and is left in place. Inverting gives B = T_1^{-1} ... T_r^{-1}.
std::vector<Transvection> decompose_transvections(const Mat& B, double tol) {
  require_square(B, "decompose_transvections");
  const std::size_t n = B.rows();
  const cplx det = determinant(B);
  if (std::abs(det - 1.0) > tol) {
    throw DeterminantError("decompose_transvections: |det(B) - 1| = " + std::to_string(std::abs(det - 1.0)) +
                           " exceeds tolerance");
  }

  const double zero_tol = tol * std::max(1.0, max_abs(B));
  Mat w = B;
  std::vector<Transvection> ops;
  auto apply = [&](std::size_t i, std::size_t j, cplx c) {
    if (c == 0.0) return;
    add_row_multiple(w, i, j, c);
    ops.push_back({i, j, c});
  };

  for (std::size_t c = 0; c < n; ++c) {
    if (c + 1 < n && w(c, c) != 1.0) {
      std::size_t r = c + 1;
      for (std::size_t k = c + 2; k < n; ++k)
        if (std::abs(w(k, c)) > std::abs(w(r, c))) r = k;
      if (std::abs(w(r, c)) <= zero_tol) {
        if (std::abs(w(c, c)) <= zero_tol)
          throw PivotError("decompose_transvections: no usable pivot in column " + std::to_string(c + 1));
        r = c + 1;
        apply(r, c, 1.0);
      }
      apply(c, r, (1.0 - w(c, c)) / w(r, c));
    }
    const cplx pivot = w(c, c);
    if (std::abs(pivot) <= zero_tol)
      throw PivotError("decompose_transvections: vanishing pivot in column " + std::to_string(c + 1));
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c) continue;
      apply(i, c, -w(i, c) / pivot);
    }
  }

  for (auto& t : ops) t.a = -t.a;
  return ops;
}

Mat multiply_transvections(std::size_t n, std::span<const Transvection> factors) {
  Mat acc = Mat::identity(n);
  for (const auto& t : factors) {
    if (t.i >= n || t.j >= n || t.i == t.j) throw IndexError("multiply_transvections: invalid position");
    // acc * (I + a E_ij): column j += a * column i.
    for (std::size_t r = 0; r < n; ++r) acc(r, t.j) += t.a * acc(r, t.i);
  }
  return acc;
}

}  // namespace jdlab
