#pragma once

// Stationarity operators of the joint-diagonalization cost.
//
//   T_ijk(V) = E_ij C_k - C_k E_ij,   C_k = V^H M_k^H V
//   S(V, M)  = sum_k sum_{i != j} conj(gamma_ijk(V)) T_ijk(V)
//
// and the first-order expansion of S(I + lambda L, N) around lambda = 0 for
// N_k = K_k + lambda Rc_k, with K_k a generalized transvection and
// Rc_k = U^H R_k U. Writing C_k = C0 + lambda C1 + O(lambda^2) with
//
//   C0 = K^H,   C1 = L^H K^H + K^H L + Rc^H,
//
// the per-(i, j, k) terms are alpha = [E_ij, C0], beta = [E_ij, C1],
// delta = conj(C0_ij) = K_ji and epsilon = conj(C1_ij), so that
// T = alpha + lambda beta and conj(gamma) = delta + lambda epsilon to first order.

#include <cstddef>
#include <optional>
#include <vector>

#include "jdlab/ensemble.hpp"
#include "jdlab/matrix.hpp"

namespace jdlab {

/// T_ijk(V), 0-based. Defined for any square V.
Mat T_map(const Mat& V, const Ensemble& M, std::size_t i, std::size_t j, std::size_t k);

/// S(V, M). Defined for any square V; evaluating it at first-order points
/// I + lambda L that are unitary only up to O(lambda^2) is intended.
Mat S_map(const Mat& V, const Ensemble& M);

/// ||S - S^H||_F / max(1, ||S||_F).
double stationarity_residual(const Mat& V, const Ensemble& M);
double hermitian_residual(const Mat& S);

struct FirstOrderTerms {
  Mat alpha;
  Mat beta;
  cplx delta;
  cplx epsilon;
};

/// Expansion coefficients for one (i, j) and one member K. Rc defaults to zero.
FirstOrderTerms first_order_terms(const Mat& L, const Mat& K, std::size_t i, std::size_t j,
                                  const std::optional<Mat>& Rc = std::nullopt);

/// sum_k sum_{i != j} [ delta alpha + (delta beta + epsilon alpha) lambda ];
/// the lambda^2 product epsilon beta is dropped. C_a holds the K_k and
/// conjugated_R the U^H R_k U (may be empty, meaning zero).
Mat S_first_order(const Mat& L, const Ensemble& C_a, const std::vector<Mat>& conjugated_R, double lambda);
/// Same with C_a, U^H R_k U and lambda taken from the setup.
Mat S_first_order(const Mat& L, const PerturbationSetup& setup);

}  // namespace jdlab
