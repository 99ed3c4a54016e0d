#include "jdlab/cost.hpp"

#include <cmath>
#include <string>

#include "jdlab/errors.hpp"

namespace jdlab {

namespace {

void check_inputs(const Mat& V, const Ensemble& M, double unitary_tol) {
  require_square(V, "cost");
  if (M.n() != V.rows()) throw DimensionError("cost: ensemble dimension differs from V");
  const double defect = unitarity_defect(V);
  if (defect > unitary_tol)
    throw NotUnitaryError("cost: V is not unitary (defect " + std::to_string(defect) + ")");
}

}  // namespace

double off(const Mat& a) {
  require_square(a, "off");
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return s;
}

double cost_Y(const Mat& V, const Ensemble& M, double unitary_tol) {
  check_inputs(V, M, unitary_tol);
  const Mat vh = adjoint(V);
  double total = 0.0;
  for (const auto& mk : M) total += off(vh * mk * V);
  return total;
}

Mat gamma_matrix(const Mat& V, const Mat& Mk) { return adjoint(V) * adjoint(Mk) * V; }

cplx gamma(const Mat& V, const Ensemble& M, std::size_t i, std::size_t j, std::size_t k) {
  require_square(V, "gamma");
  if (M.n() != V.rows()) throw DimensionError("gamma: ensemble dimension differs from V");
  if (i >= V.rows() || j >= V.rows() || k >= M.m())
    throw IndexError("gamma: index (" + std::to_string(i) + ", " + std::to_string(j) + ", " +
                     std::to_string(k) + ") out of range");
  return gamma_matrix(V, M[k])(i, j);
}

double cost_via_gamma(const Mat& V, const Ensemble& M, double unitary_tol) {
  check_inputs(V, M, unitary_tol);
  double total = 0.0;
  for (std::size_t k = 0; k < M.m(); ++k) {
    const Mat g = gamma_matrix(V, M[k]);
    for (std::size_t i = 0; i < g.rows(); ++i)
      for (std::size_t j = 0; j < g.cols(); ++j)
        if (i != j) total += std::norm(g(i, j));
  }
  return total;
}

}  // namespace jdlab
