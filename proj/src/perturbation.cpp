#include "jdlab/perturbation.hpp"

#include <cmath>
#include <string>

#include "jdlab/errors.hpp"

namespace jdlab {

Mat AlignmentJ::matrix() const {
  const std::size_t n = perm.size();
  Mat j(n, n);
  for (std::size_t c = 0; c < n; ++c) j(perm[c], c) = phases[c];
  return j;
}

cplx f_coeff(const DiagonalSet& diag, std::size_t i, std::size_t j, std::size_t k) {
  if (i >= diag.n() || j >= diag.n() || k >= diag.m()) throw IndexError("f_coeff: index out of range");
  if (i == j) throw IndexError("f_coeff: requires i != j");
  double denom = 0.0;
  for (std::size_t l = 0; l < diag.m(); ++l) denom += std::norm(diag(l, j) - diag(l, i));
  if (denom == 0.0) {
    throw DegenerateSpectraError("f_coeff: indices " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                 " are not separated by any diagonal matrix");
  }
  return (diag(k, j) - diag(k, i)) / denom;
}

Mat build_G(const Mat& U, const DiagonalSet& diag, const std::vector<Mat>& R) {
  require_square(U, "build_G");
  const std::size_t n = U.rows();
  if (diag.n() != n || R.size() != diag.m()) throw DimensionError("build_G: inconsistent dimensions");
  if (!separation_condition(diag)) throw DegenerateSpectraError("build_G: separation condition violated");

  const Mat uh = adjoint(U);
  std::vector<Mat> rc;
  rc.reserve(R.size());
  for (const auto& rk : R) rc.push_back(uh * rk * U);

  Mat g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      cplx s = 0.0;
      for (std::size_t k = 0; k < diag.m(); ++k) {
        const cplx f = f_coeff(diag, i, j, k);
        // u_i^H R_k u_j = (U^H R_k U)_ij and u_i^H R_k^H u_j = conj((U^H R_k U)_ji).
        s += std::conj(f) * rc[k](i, j) + f * std::conj(rc[k](j, i));
      }
      g(i, j) = 0.5 * s;
    }
  }
  return g;
}

Mat build_G(const PerturbationSetup& setup) {
  setup.validate();
  return build_G(setup.U, setup.diag, setup.R);
}

Mat predicted_diagonalizer(const PerturbationSetup& setup, const Mat& G) {
  return setup.U * (Mat::identity(setup.n()) + setup.lambda * G);
}

Mat predicted_diagonalizer_unitary(const PerturbationSetup& setup, const Mat& G) {
  return setup.U * expm(setup.lambda * G);
}

Alignment align(const Mat& V, const Mat& U, double unitary_tol) {
  require_square(V, "align");
  require_same_shape(V, U, "align");
  if (!is_unitary(V, unitary_tol) || !is_unitary(U, unitary_tol))
    throw NotUnitaryError("align: both inputs must be unitary");

  const std::size_t n = V.rows();
  const Mat p = adjoint(V) * U;
  std::vector<bool> row_used(n, false), col_used(n, false);
  AlignmentJ J{std::vector<std::size_t>(n), std::vector<cplx>(n)};

  for (std::size_t step = 0; step < n; ++step) {
    double best = -1.0;
    std::size_t br = 0, bc = 0;
    for (std::size_t r = 0; r < n; ++r) {
      if (row_used[r]) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (col_used[c]) continue;
        const double mod = std::abs(p(r, c));
        if (mod > best) {
          best = mod;
          br = r;
          bc = c;
        }
      }
    }
    if (best <= 1e-12) throw AlignmentError("align: remaining overlaps vanish, assignment is ambiguous");
    row_used[br] = col_used[bc] = true;
    J.perm[bc] = br;
    J.phases[bc] = p(br, bc) / best;
  }

  Alignment out;
  out.aligned = V * J.matrix();
  out.residual = fro_dist(out.aligned, U);
  out.J = std::move(J);
  return out;
}

}  // namespace jdlab
