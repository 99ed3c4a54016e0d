#pragma once

#include <cstddef>

#include "jdlab/ensemble.hpp"
#include "jdlab/matrix.hpp"

namespace jdlab {

/// Unitarity tolerance accepted by cost_Y. Loose enough for first-order
/// points U (I + lambda G) at small lambda.
inline constexpr double kCostUnitaryTol = 1e-8;

/// Sum of |a_ij|^2 over i != j.
double off(const Mat& a);

/// Joint-diagonalization cost: sum_k off(V^H M_k V).
/// Throws NotUnitaryError when V fails is_unitary(V, unitary_tol).
double cost_Y(const Mat& V, const Ensemble& M, double unitary_tol = kCostUnitaryTol);

/// gamma_ijk(V) = (V^H M_k^H V)_ij, 0-based indices. Defined for any square V.
cplx gamma(const Mat& V, const Ensemble& M, std::size_t i, std::size_t j, std::size_t k);

/// sum_k sum_{i != j} |gamma_ijk(V)|^2; agrees with cost_Y.
double cost_via_gamma(const Mat& V, const Ensemble& M, double unitary_tol = kCostUnitaryTol);

/// V^H M_k^H V, the matrix whose entries are gamma_ijk.
Mat gamma_matrix(const Mat& V, const Mat& Mk);

}  // namespace jdlab
