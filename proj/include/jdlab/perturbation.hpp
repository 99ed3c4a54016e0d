#pragma once

// First-order correction of a joint diagonalizer under an additive
// perturbation M_k = U D_k U^H + lambda R_k. The corrected diagonalizer is
// U (I + lambda G) with G antihermitian, zero on the diagonal and, for i != j,
//
//   g_ij = 1/2 sum_k [ conj(f_ij(k)) (u_i^H R_k u_j) + f_ij(k) (u_i^H R_k^H u_j) ]
//   f_ij(k) = (d_j(k) - d_i(k)) / sum_l |d_j(l) - d_i(l)|^2
//
// where u_i is the i-th column of U. Minimizers of the cost are only defined
// up to an alignment J (permutation times unit-modulus diagonal); align()
// removes that ambiguity before comparing a numerical minimizer with U.

#include <cstddef>
#include <vector>

#include "jdlab/ensemble.hpp"
#include "jdlab/matrix.hpp"

namespace jdlab {

/// J = P * diag(phases): column j of V J is phases[j] times column perm[j] of V.
struct AlignmentJ {
  std::vector<std::size_t> perm;
  std::vector<cplx> phases;

  Mat matrix() const;
};

struct Alignment {
  AlignmentJ J;
  Mat aligned;  ///< V J
  double residual = 0.0;  ///< fro_dist(V J, U)
};

/// f_ij(k), 0-based. Throws DegenerateSpectraError when the denominator is zero.
cplx f_coeff(const DiagonalSet& diag, std::size_t i, std::size_t j, std::size_t k);

/// G from U, the diagonal table and R_1..R_m (lambda and a play no role).
Mat build_G(const Mat& U, const DiagonalSet& diag, const std::vector<Mat>& R);
Mat build_G(const PerturbationSetup& setup);

/// U (I + lambda G). Unitary only up to O(lambda^2).
Mat predicted_diagonalizer(const PerturbationSetup& setup, const Mat& G);
/// U exp(lambda G): the exactly unitary point with the same first-order term.
Mat predicted_diagonalizer_unitary(const PerturbationSetup& setup, const Mat& G);

/// Greedy alignment of V onto U. P = V^H U; repeatedly match the largest
/// remaining |P_rc| (ties to the smallest row, then column) and pick the phase
/// that makes the matched entry of (V J)^H U positive real.
/// Throws AlignmentError when the remaining moduli all vanish (<= 1e-12).
Alignment align(const Mat& V, const Mat& U, double unitary_tol = 1e-8);

}  // namespace jdlab
