#include "jdlab/stationarity.hpp"

#include <algorithm>
#include <string>

#include "jdlab/cost.hpp"
#include "jdlab/errors.hpp"

namespace jdlab {

namespace {

void check_index(std::size_t n, std::size_t i, std::size_t j) {
  if (i >= n || j >= n)
    throw IndexError("index (" + std::to_string(i) + ", " + std::to_string(j) + ") out of range for n = " +
                     std::to_string(n));
}

// [E_ij, C] = E_ij C - C E_ij without forming E_ij.
Mat commutator_with_unit(const Mat& C, std::size_t i, std::size_t j) {
  const std::size_t n = C.rows();
  Mat out(n, n);
  for (std::size_t c = 0; c < n; ++c) out(i, c) += C(j, c);
  for (std::size_t r = 0; r < n; ++r) out(r, j) -= C(r, i);
  return out;
}

void add_scaled(Mat& acc, const Mat& x, cplx s) {
  if (s == 0.0) return;
  auto dst = acc.entries();
  auto src = x.entries();
  for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += s * src[k];
}

FirstOrderTerms terms_from_expansion(const Mat& C0, const Mat& C1, std::size_t i, std::size_t j) {
  return {commutator_with_unit(C0, i, j), commutator_with_unit(C1, i, j), std::conj(C0(i, j)),
          std::conj(C1(i, j))};
}

}  // namespace

Mat T_map(const Mat& V, const Ensemble& M, std::size_t i, std::size_t j, std::size_t k) {
  require_square(V, "T_map");
  if (M.n() != V.rows()) throw DimensionError("T_map: ensemble dimension differs from V");
  check_index(V.rows(), i, j);
  if (k >= M.m()) throw IndexError("T_map: k out of range");
  return commutator_with_unit(gamma_matrix(V, M[k]), i, j);
}

Mat S_map(const Mat& V, const Ensemble& M) {
  require_square(V, "S_map");
  if (M.n() != V.rows()) throw DimensionError("S_map: ensemble dimension differs from V");
  const std::size_t n = V.rows();
  // sum_{i != j} conj(C_ij) [E_ij, C] = Z C - C Z with Z the entrywise
  // conjugate of the off-diagonal part of C.
  Mat S(n, n);
  for (const auto& mk : M) {
    const Mat C = gamma_matrix(V, mk);
    Mat Z(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) Z(i, j) = std::conj(C(i, j));
    S += Z * C - C * Z;
  }
  return S;
}

double hermitian_residual(const Mat& S) {
  return fro_dist(S, adjoint(S)) / std::max(1.0, fro_norm(S));
}

double stationarity_residual(const Mat& V, const Ensemble& M) { return hermitian_residual(S_map(V, M)); }

FirstOrderTerms first_order_terms(const Mat& L, const Mat& K, std::size_t i, std::size_t j,
                                  const std::optional<Mat>& Rc) {
  require_square(L, "first_order_terms");
  require_same_shape(L, K, "first_order_terms");
  check_index(L.rows(), i, j);
  if (i == j) throw IndexError("first_order_terms: requires i != j");
  const Mat kh = adjoint(K);
  const Mat C0 = kh;
  Mat C1 = adjoint(L) * kh + kh * L;
  if (Rc) {
    require_same_shape(L, *Rc, "first_order_terms");
    C1 += adjoint(*Rc);
  }
  return terms_from_expansion(C0, C1, i, j);
}

Mat S_first_order(const Mat& L, const Ensemble& C_a, const std::vector<Mat>& conjugated_R, double lambda) {
  require_square(L, "S_first_order");
  if (C_a.n() != L.rows()) throw DimensionError("S_first_order: ensemble dimension differs from L");
  if (!conjugated_R.empty() && conjugated_R.size() != C_a.m())
    throw DimensionError("S_first_order: conjugated R count differs from m");
  const std::size_t n = L.rows();
  const Mat lh = adjoint(L);

  Mat S(n, n);
  for (std::size_t k = 0; k < C_a.m(); ++k) {
    const Mat kh = adjoint(C_a[k]);
    Mat C1 = lh * kh + kh * L;
    if (!conjugated_R.empty()) {
      require_same_shape(L, conjugated_R[k], "S_first_order");
      C1 += adjoint(conjugated_R[k]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const FirstOrderTerms t = terms_from_expansion(kh, C1, i, j);
        add_scaled(S, t.alpha, t.delta);
        add_scaled(S, t.beta, t.delta * lambda);
        add_scaled(S, t.alpha, t.epsilon * lambda);
      }
    }
  }
  return S;
}

Mat S_first_order(const Mat& L, const PerturbationSetup& setup) {
  setup.validate();
  return S_first_order(L, build_C_a(setup.diag, setup.a, setup.tpos), setup.conjugated_R(), setup.lambda);
}

}  // namespace jdlab
